"""
Tests for Main Application Module (src/main.py)

Exit codes, stream discipline and file output of the mopkit program.
"""

import io
import json

import pytest

from src.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, MopkitApp, main


def _run(argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = MopkitApp(stdout=stdout, stderr=stderr).run(argv)
    return code, stdout.getvalue(), stderr.getvalue()


class TestMopkitApp:
    """The application class."""

    def test_default_streams(self):
        """Without arguments the app writes to the process streams."""
        import sys

        app = MopkitApp()
        assert app.stdout is sys.stdout
        assert app.stderr is sys.stderr

    def test_generate_writes_payload_to_stdout(self):
        """A successful command prints JSON and exits with 0."""
        code, out, err = _run(['generate', 'cp2', '--n', '1', '--wmax', '2'])
        assert code == EXIT_OK
        assert json.loads(out)['model'] == 'cp2'
        assert err == ''

    def test_verify_passing_and_failing(self):
        """All checks passing exits 0; any failure exits 1."""
        code, out, _ = _run(['verify', 'cp2', '--n', '1', '--wmax', '2', '--checks', 'factorization'])
        assert code == EXIT_OK
        code, out, _ = _run(['verify', 'cp2', '--n', '1', '--wmax', '2', '--checks', 'eigen', '--tol', '1e-30'])
        assert code == EXIT_FAILED
        assert json.loads(out)['payload']['all_passed'] is False

    def test_unknown_model_is_a_usage_error(self):
        """An unregistered model exits with 2 and a message on stderr."""
        code, out, err = _run(['generate', 'so3'])
        assert code == EXIT_USAGE
        assert out == ''
        assert err.startswith('Unknown model.')

    def test_invalid_parameter_is_a_usage_error(self):
        """Negative wmax exits with 2."""
        code, _, err = _run(['generate', 'cp2', '--wmax', '-1'])
        assert code == EXIT_USAGE
        assert 'Invalid parameters' in err

    def test_legendre_rejects_n(self):
        """The control model only takes n = 0."""
        code, _, _ = _run(['generate', 'legendre', '--n', '2'])
        assert code == EXIT_USAGE

    def test_argparse_errors(self):
        """Malformed command lines exit with 2, --help with 0."""
        assert _run(['verify', 'cp2', '--checks', 'nonsense'])[0] == EXIT_USAGE
        assert _run(['--help'])[0] == EXIT_OK

    def test_numerical_error_exits_with_one(self, monkeypatch):
        """A numerical error raised by a command exits with 1."""
        from src.components import cli
        from src.numerics.exceptions import SingularMatrixError

        def failing(args):
            raise SingularMatrixError("C_3 is numerically singular", index=3)

        monkeypatch.setitem(cli.COMMANDS, 'generate', failing)
        code, out, err = _run(['generate', 'cp2'])
        assert code == EXIT_FAILED
        assert out == ''
        assert 'numerically singular' in err
        assert 'Details: C_3' in err

    def test_out_file(self, tmp_path):
        """--out writes UTF-8 with LF line endings and nothing on stdout."""
        target = tmp_path / 'q.csv'
        code, out, _ = _run(['generate', 'cp2', '--n', '1', '--wmax', '1', '--format', 'csv', '--out', str(target)])
        assert code == EXIT_OK
        assert out == ''
        data = target.read_bytes()
        assert b'\r\n' not in data
        assert data.decode('utf-8').startswith('series,index,power,row,col,re,im\n')

    def test_unwritable_output(self, tmp_path):
        """A missing output directory exits with 1."""
        target = tmp_path / 'missing' / 'q.json'
        code, _, err = _run(['generate', 'cp2', '--out', str(target)])
        assert code == EXIT_FAILED
        assert 'Could not write' in err

    def test_runs_are_deterministic(self):
        """Identical inputs give byte-identical payloads."""
        argv = ['verify', 'cp2', '--n', '1', '--wmax', '3', '--checks', 'factorization,eigen', '--seed', '5']
        assert _run(argv)[1] == _run(argv)[1]


class TestMainFunction:
    """The main() entry point."""

    def test_main_returns_exit_code(self, capsys):
        """main() returns the code instead of exiting."""
        assert main(['moments', 'cp2', '--n', '1']) == EXIT_OK
        assert json.loads(capsys.readouterr().out)['payload']['W'][0]['order'] == 0

    def test_main_usage_error(self, capsys):
        """Usage errors from argparse are reported as 2."""
        assert main(['generate']) == EXIT_USAGE
        assert 'usage' in capsys.readouterr().err

    def test_app_module_imports_main(self):
        """app.py delegates to src.main.main."""
        import app

        assert app.main is main
