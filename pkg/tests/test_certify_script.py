import importlib.util
import json
from pathlib import Path

import pytest

from smallcancel.cli import EXIT_OK, EXIT_USAGE

pytestmark = pytest.mark.integration

SCRIPT = Path(__file__).resolve().parent.parent / "scripts" / "certify_family.py"


@pytest.fixture(scope="module")
def certify_script():
    spec = importlib.util.spec_from_file_location("certify_family", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def exit_code(script, *argv):
    with pytest.raises(SystemExit) as exc:
        script.main(list(argv))
    return exc.value.code


class TestCertifyScript:
    """Test suite for the batch certification script."""

    @pytest.mark.parametrize("lam", ["0.1", "1e-1", "1/0", "abc", "0", "3/2"])
    def test_bad_lambda_is_usage_error(self, certify_script, group_files, capsys, lam):
        """Decimals, zero denominators and lambdas outside (0, 1] exit 64."""
        code = exit_code(certify_script, str(group_files["trivial"]), "--lambda", lam)
        out = capsys.readouterr().out
        assert code == EXIT_USAGE
        assert "Error" in out

    def test_missing_group_file(self, certify_script, tmp_path, capsys):
        """An unreadable group spec exits 64."""
        code = exit_code(certify_script, str(tmp_path / "absent.group"), "--lambda", "1/10")
        assert code == EXIT_USAGE

    def test_certifies_and_writes(self, certify_script, group_files, tmp_path, capsys):
        """A single-relator truncation passes and leaves a manifest and a certificate."""
        out_dir = tmp_path / "out"
        code = exit_code(
            certify_script,
            str(group_files["trivial"]),
            "--kmax",
            "2",
            "--n-rep",
            "80",
            "--lambda",
            "1/10",
            "--out-dir",
            str(out_dir),
        )
        assert code == EXIT_OK
        assert (out_dir / "family-k2.txt").exists()
        report = json.loads((out_dir / "certificate-k2.json").read_text())
        assert report["pass"] is True
