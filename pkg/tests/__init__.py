"""Tests for smallcancel."""
