import subprocess
import sys

import pytest

from anytime_inference.cli import main
from anytime_inference.datasets import TWO_COINS, data_path

CHILD = str(data_path("child_standin.net"))


@pytest.fixture
def coins(tmp_path):
    path = tmp_path / "coins.net"
    path.write_text(TWO_COINS)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve(capsys, coins):
    code, out, _ = run(capsys, "solve", "--model", coins, "--query", "coin1")
    assert code == 0
    assert out == "potential arith-rational coin1\nheads : 3/5\ntails : 2/5\n"


def test_solve_normalized(capsys, coins):
    code, out, _ = run(capsys, "solve", "--model", coins, "--query", "coin1,coin2",
                       "--normalize")
    assert code == 0
    assert "heads,heads : 0.300000000" in out


def test_solve_float_override(capsys, coins):
    code, out, _ = run(capsys, "solve", "--model", coins, "--query", "coin1",
                       "--semiring", "arith-float")
    assert code == 0 and "heads : 0.6" in out


def test_anytime_zero_only(capsys, coins):
    code, out, _ = run(capsys, "anytime", "--model", coins, "--query", "coin1",
                       "--schedule", "0")
    assert code == 0
    assert out.splitlines() == ["step,budget,cumulative_budget,attempts,epsilon,entries",
                                "0,0,0,0,1.000000000,0"]


def test_anytime_ends_exact(capsys, tmp_path):
    out_file = tmp_path / "trace.csv"
    records = tmp_path / "session.jsonl"
    code, _, _ = run(capsys, "anytime", "--model", CHILD, "--query", "Disease",
                     "--schedule", "0,50,200,+unlimited", "--out", str(out_file),
                     "--session-trace", str(records))
    assert code == 0
    rows = out_file.read_text().splitlines()
    assert rows[-1].split(",")[4] == "0.000000000"
    assert len(records.read_text().splitlines()) == 4


def test_anytime_estimate_is_labeled(capsys, coins):
    code, out, err = run(capsys, "anytime", "--model", coins, "--query", "coin1",
                         "--schedule", "0,+unlimited", "--estimate")
    assert code == 0
    assert "estimate" in err
    assert out.splitlines()[-1].split(",")[4] == "0.000000000"


def test_anytime_wall_clock(capsys, coins):
    code, out, _ = run(capsys, "anytime", "--model", coins, "--query", "coin1",
                       "--schedule", "0,+unlimited", "--wall-clock")
    assert code == 0
    assert out.splitlines()[-1].split(",")[4] == "0.000000000"


def test_anytime_is_deterministic(capsys, tmp_path):
    texts = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        run(capsys, "anytime", "--model", CHILD, "--query", "Disease,Age",
            "--schedule", "10,100,1000,+unlimited", "--out", str(path))
        texts.append(path.read_bytes())
    assert texts[0] == texts[1]


def test_approx(capsys, coins):
    code, out, err = run(capsys, "approx", "--model", coins, "--query", "coin1", "--k", "4")
    assert code == 0
    assert out == "potential arith-rational coin1\nheads : 3/5\ntails : 2/5\n"
    assert err.startswith("# attempts")


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--model", CHILD, "--query", "Disease", "--outline")
    assert code == 0
    stats = dict(line.split(" ", 1) for line in out.splitlines()[:10])
    assert stats["variables"] == "20" and stats["nodes"] == "39" and stats["edges"] == "38"
    assert int(stats["treewidth"]) == int(stats["omega"]) - 1


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--count", "5")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines() if line.strip())


def test_exit_codes(capsys, coins, tmp_path):
    bad = tmp_path / "bad.net"
    bad.write_text("variable A {0, 1}\ncpt B\n")
    assert run(capsys, "solve", "--model", str(bad), "--query", "A")[0] == 2
    assert run(capsys, "solve", "--model", coins, "--query", "nope")[0] == 1
    assert run(capsys, "solve", "--model", str(tmp_path / "missing.net"), "--query", "A")[0] == 1
    assert run(capsys, "anytime", "--model", coins, "--query", "coin1",
               "--schedule", "x")[0] == 1
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 1


def test_state_error_exit_code(capsys, monkeypatch, coins):
    from anytime_inference import cli
    from anytime_inference.errors import EngineStateError

    def broken(args):
        raise EngineStateError("refine called before inward")

    monkeypatch.setattr(cli, "cmd_solve", broken)
    parser = cli.make_parser()
    args = parser.parse_args(["solve", "--model", coins, "--query", "coin1"])
    args.func = broken
    monkeypatch.setattr(cli, "make_parser", lambda: _Fixed(args))
    assert cli.main([]) == 3


class _Fixed:
    def __init__(self, args):
        self.args = args

    def parse_args(self, argv):
        return self.args


def test_module_entry_point(coins):
    proc = subprocess.run([sys.executable, "-m", "anytime_inference", "solve", "--model", coins,
                           "--query", "coin2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.endswith("heads : 1/2\ntails : 1/2\n")
