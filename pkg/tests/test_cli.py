import io
import subprocess
import sys
from fractions import Fraction

import pytest

from learnaug.cli import run
from learnaug.scheduling import parse_trace
from learnaug.ski_lp import min_consistency
from learnaug.tradeoff_curves import dominance_violations, read_csv

F = Fraction


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def pairs(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and not line.startswith("t="))


def test_sched_example():
    code, out = call("sched", "--policy", "two-stage", "--lambda", "1/5", "--x", "1,1", "--y", "1,1")
    assert code == 0
    assert out == "alg=18/5\nopt=3\nratio=6/5\n"


def test_decimal_lambda_is_exact():
    _, a = call("sched", "--policy", "two-stage", "--lambda", "0.2", "--x", "1,1", "--y", "1,1")
    _, b = call("sched", "--policy", "two-stage", "--lambda", "1/5", "--x", "1,1", "--y", "1,1")
    assert a == b


def test_sched_trace_parses_back():
    code, out = call("sched", "--policy", "two-stage", "--lambda", "1/5", "--x", "2,2", "--y", "1,1", "--trace")
    assert code == 0
    events = parse_trace("\n".join(l for l in out.splitlines() if l.startswith("t=")))
    assert [e.kind for e in events] == ["budget", "overrun", "overrun", "complete", "complete"]
    assert pairs(out)["alg"] == "38/5"


def test_ski_lp_bisect_example():
    code, out = call("ski-lp", "--budget", "10", "--gamma", "2", "--bisect", "40")
    assert code == 0
    kv = pairs(out)
    lo, hi = F(kv["beta_infeasible"]), F(kv["beta_min"])
    assert lo < min_consistency(10, 2) <= hi
    assert F(kv["analytic_beta_min"]) == min_consistency(10, 2)


def test_ski_lp_verdicts():
    code, out = call("ski-lp", "--budget", "3", "--gamma", "2", "--beta", "3/2")
    assert code == 0 and pairs(out)["feasible"] == "true"
    code, out = call("ski-lp", "--budget", "3", "--gamma", "2", "--beta", "1.1")
    assert code == 1 and pairs(out)["feasible"] == "false"
    assert len(pairs(out)["certificate"].split(",")) == 4


def test_ski_det_and_rand():
    code, out = call("ski-det", "--budget", "10", "--lambda", "1/2", "--x", "5", "--y", "16")
    kv = pairs(out)
    assert code == 0 and kv["buy_day"] == "5" and kv["ratio"] == "14/5"
    code, out = call("ski-rand", "--budget", "20", "--lambda", "1/2", "--x", "3", "--y", "30")
    assert code == 0 and pairs(out)["bounds_hold"] == "true"


@pytest.mark.parametrize(
    "argv",
    [
        ["ski-det", "--budget", "10", "--lambda", "0"],
        ["ski-det", "--budget", "10", "--lambda", "0.5", "--x", "3"],
        ["ski-det", "--budget", "10"],
        ["ski-det", "--budget", "10", "--lambda", "1/3.5"],
        ["sched", "--policy", "two-stage", "--x", "1,1", "--y", "1,1"],
        ["sched", "--policy", "rr", "--x", "1,1", "--y", "1"],
        ["ski-lp", "--budget", "5", "--gamma", "2"],
        ["frobnicate"],
        ["ski-rand", "--budget", "10", "--lambda", "1/2", "--bogus", "1"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv, out=io.StringIO()) == 2
    assert "usage" in capsys.readouterr().err


def test_adversary_subcommand():
    code, out = call("sched-adversary", "--policy", "two-stage", "--n", "2", "--lambda", "1/5", "--epsilon", "1/10000")
    kv = pairs(out)
    assert code == 0
    assert F(kv["ratio"]) >= F(kv["lower_bound"]) - F(1, 1000)
    code, out = call("sched-adversary", "--policy", "rr", "--n", "3", "--lambda", "1/5", "--epsilon", "1/100")
    assert code == 1 and "error" in pairs(out)


def test_curve_sched2(tmp_path):
    csv_path = tmp_path / "tradeoff.csv"
    code, out = call("curve", "--which", "sched2", "--out", str(csv_path), "--svg", str(tmp_path / "t.svg"))
    assert code == 0
    rows = read_csv(csv_path)
    names = {r.series for r in rows}
    assert {"sched2", "sched2-lower"} <= names
    assert dominance_violations(rows) == []
    assert (tmp_path / "t.svg").exists()


def test_curve_unwritable_path(tmp_path):
    code, _ = call("curve", "--which", "schedN", "--n", "3", "--out", str(tmp_path / "missing" / "c.csv"))
    assert code == 2


def test_output_is_deterministic(tmp_path):
    argv = ["curve", "--which", "ski", "--budget", "30", "--out", str(tmp_path / "a.csv")]
    assert call(*argv) == call(*argv)
    first = (tmp_path / "a.csv").read_bytes()
    call(*argv)
    assert (tmp_path / "a.csv").read_bytes() == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "learnaug", "sched", "--policy", "rr", "--x", "1,1", "--y", "1,1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "alg=4\nopt=3\nratio=4/3\n"
