import json

import pytest
from typer.testing import CliRunner

from smallcancel.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, app, main, parse_rational
from smallcancel.errors import RationalSyntaxError
from smallcancel.services.relator_gen import build_family, write_manifest
from smallcancel.services.word_core import parse_word, reduce

pytestmark = pytest.mark.integration


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


class TestParseRational:
    """Test suite for exact rational options."""

    def test_fraction(self):
        """p/q and integers parse exactly."""
        assert parse_rational("7/10").numerator == 7
        assert parse_rational("1") == 1

    @pytest.mark.parametrize("text", ["0.1", "1e-1", "a/b", "1/0"])
    def test_rejects(self, text):
        """Decimals and garbage are rejected."""
        with pytest.raises(RationalSyntaxError):
            parse_rational(text)


class TestWordCommands:
    """Test suite for commands that work on single words."""

    def test_gen_relators(self, capsys):
        """One relator from a prefix, as a manifest."""
        code, out, _ = run(capsys, "gen-relators", "--prefix", "5,9", "--n-rep", "1", "--quiet")
        assert code == EXIT_OK
        assert "(5, 9) k=2 n=1" in out
        assert "x5 x9^2 x5 x9" in out

    def test_gen_relators_json(self, capsys):
        """JSON output lists the relator length."""
        code, out, _ = run(capsys, "gen-relators", "--prefix", "0,1", "--format", "json", "--quiet")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["relators"][0]["length"] == 6640

    def test_symmetrize(self, capsys):
        """Members of x0 x1, one per line."""
        code, out, _ = run(capsys, "symmetrize", "--word", "x0 x1", "--quiet")
        assert code == EXIT_OK
        assert len(out.splitlines()) == 8
        assert "x1^2 x0^2" in out.splitlines()

    def test_dense(self, capsys):
        """Exit 0 when dense, 2 when not."""
        assert run(capsys, "dense", "--word", "x1 x2 x1^2 x3^2", "--epsilon", "1/2", "--quiet")[0] == EXIT_OK
        code, out, _ = run(capsys, "dense", "--word", "x0 x1 x0 x1", "--epsilon", "1", "--quiet")
        assert code == EXIT_CHECK_FAILED
        assert out.strip() == "not dense"

    def test_bad_word_is_usage_error(self, capsys):
        """Malformed words exit 64."""
        code, _, err = run(capsys, "dense", "--word", "x0 y1", "--epsilon", "1")
        assert code == EXIT_USAGE
        assert "malformed token" in err

    def test_bad_rational_is_usage_error(self, capsys):
        """Non-fraction options exit 64."""
        assert run(capsys, "dense", "--word", "x0", "--epsilon", "0.5")[0] == EXIT_USAGE

    def test_unknown_command(self, capsys):
        """Unknown commands exit 64."""
        assert run(capsys, "frobnicate")[0] == EXIT_USAGE

    def test_missing_required_option(self, capsys):
        """A missing required option exits 64 without raising."""
        code, _, err = run(capsys, "dense", "--word", "x0")
        assert code == EXIT_USAGE
        assert "--epsilon" in err

    def test_unparsable_rational_option(self, capsys):
        """Garbage in a rational option exits 64 without raising."""
        code, _, err = run(capsys, "dense", "--word", "x0 x1", "--epsilon", "abc")
        assert code == EXIT_USAGE
        assert "epsilon" in err

    def test_bad_option_type(self, capsys):
        """Typer type conversion errors exit 64."""
        assert run(capsys, "dense", "--word", "x0", "--epsilon", "1", "--max-length", "many")[0] == EXIT_USAGE

    def test_scan_unique(self, capsys):
        """The default relator passes the 7/10 scan."""
        code, out, _ = run(capsys, "scan-unique", "--format", "json", "--quiet")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["pass"] is True
        assert report["expected"] == 1
        assert len(report["windows"]) == 6640

    def test_act(self, capsys):
        """Relabeling through the CLI."""
        code, out, _ = run(capsys, "act", "--sigma", "(0 1 2)", "--word", "x0 x1^2", "--quiet")
        assert code == EXIT_OK
        assert out.strip() == "x1 x2^2"


class TestGroupCommands:
    """Test suite for commands over permutation groups and families."""

    def test_perm_closure(self, capsys):
        """S3 from two transpositions."""
        code, out, _ = run(
            capsys, "perm-closure", "--gens", "(0 1)", "--gens", "(1 2)", "--depth", "4", "--format", "json"
        )
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["size"] == 6
        assert report["complete"] is True

    def test_perm_closure_from_file(self, capsys, group_files):
        """Closure read from a group file."""
        code, out, _ = run(capsys, "perm-closure", "--group", str(group_files["p"]), "--quiet")
        assert code == EXIT_OK
        assert out.startswith("3 elements, complete")

    def test_family_writes_manifest(self, capsys, group_files, tmp_path):
        """The family command writes a readable manifest."""
        target = tmp_path / "family.txt"
        code, out, _ = run(
            capsys,
            "family",
            "--group",
            str(group_files["p"]),
            "--kmax",
            "3",
            "--n-rep",
            "2",
            "--output",
            str(target),
            "--format",
            "json",
            "--quiet",
        )
        assert code == EXIT_OK
        assert json.loads(out)["base_relators"] == 6
        assert target.read_text().startswith("# smallcancel family manifest")

    def test_family_diff(self, capsys, group_files):
        """Inclusion holds one way only."""
        args = ["--kmax", "3", "--n-rep", "2", "--quiet"]
        code, out, _ = run(capsys, "family-diff", str(group_files["p"]), str(group_files["q"]), *args)
        assert code == EXIT_OK
        assert out.startswith("subset=true")
        code, out, _ = run(capsys, "family-diff", str(group_files["r"]), str(group_files["p"]), *args)
        assert code == EXIT_CHECK_FAILED
        assert "missing" in out

    def test_missing_group_file(self, capsys, tmp_path):
        """Unreadable files exit 64."""
        assert run(capsys, "family", "--group", str(tmp_path / "nope.group"), "--quiet")[0] == EXIT_USAGE

    def test_family_requires_source(self, capsys):
        """verify-cprime needs --group or --family."""
        assert run(capsys, "verify-cprime", "--quiet")[0] == EXIT_USAGE


class TestCertifiedCommands:
    """Test suite for commands that need a certificate."""

    def test_verify_cprime_fails_length(self, capsys, tmp_path):
        """A length-5 relator fails C'(1/10) with exit 2."""
        manifest = tmp_path / "short.txt"
        manifest.write_text(write_manifest(build_family([reduce(parse_word("x0 x1 x2 x3 x4"))])))
        code, out, _ = run(
            capsys, "verify-cprime", "--family", str(manifest), "--lambda", "1/10", "--format", "json", "--quiet"
        )
        assert code == EXIT_CHECK_FAILED
        report = json.loads(out)
        assert report["pass"] is False
        assert report["length_condition"] is False
        assert report["lambda"] == "1/10"

    def test_reduce_refuses_uncertified(self, capsys, group_files):
        """Dehn reduction over a family without a 1/6 certificate exits 2."""
        code, _, err = run(
            capsys, "reduce", "--group", str(group_files["trivial"]), "--kmax", "3", "--n-rep", "2", "--word", "x0"
        )
        assert code == EXIT_CHECK_FAILED
        assert "check failed" in err

    def test_reduce_and_trace(self, capsys, group_files):
        """Certified reduction prints the trace then the final word."""
        code, out, _ = run(
            capsys,
            "reduce",
            "--group",
            str(group_files["trivial"]),
            "--kmax",
            "3",
            "--word",
            "x2 x0 x0^2 x1",
            "--trace",
            "--quiet",
        )
        assert code == EXIT_OK
        assert out.strip().splitlines()[-1] == "x2 x1"

    @pytest.mark.parametrize("body", ["", "- k=5\nx0\n"])
    def test_barrier_zero_floor(self, capsys, tmp_path, body):
        """An empty family or one with floor 0 is a usage error, not a division by zero."""
        manifest = tmp_path / "floor.txt"
        manifest.write_text(write_manifest(build_family([])) + body)
        code, _, err = run(capsys, "probe", "barrier", "--family", str(manifest), "--samples", "3", "--quiet")
        assert code == EXIT_USAGE
        assert "floor" in err


class TestCliRunner:
    """Test suite for the Typer app invoked directly."""

    def test_help_lists_commands(self):
        """--help names the subcommands."""
        result = CliRunner().invoke(app, ["--help"])
        assert result.exit_code == 0
        assert "verify-cprime" in result.output
        assert "probe" in result.output

    def test_act(self):
        """The app runs a command without main()."""
        result = CliRunner().invoke(app, ["act", "--sigma", "(0 1)", "--word", "x0 x2", "--quiet"])
        assert result.exit_code == 0
        assert result.output.strip() == "x1 x2"
