import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wildtorsion.cli import main
from wildtorsion.errors import InputError
from wildtorsion.report import Grid, JobSpec, Report, exit_status, parse_json, render_json, run_job, summarize, sweep


def run_cli(*args):
    out = io.StringIO()
    code = main(list(args), out=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line]


def test_as_both():
    code, out = run_cli("as", "--p", "3", "--m", "4", "--mode", "both", "--format", "json-lines")
    (r,) = records(out)
    assert code == 0
    assert r["partition"] == [2, 1] and r["agree"] is True
    assert r["breaks"] == [4] and r["i_table"] == {"1": 4, "2": 4}
    assert r["stabilization_N"] is not None and r["elapsed_ms"] is None


def test_formula_n2_label():
    code, out = run_cli("formula", "--p", "2", "--n", "2", "--d", "1", "--breaks", "1,3", "--format", "json-lines")
    (r,) = records(out)
    assert code == 0
    assert r["partition"] == [1, 1] and r["label"] == "unverified-by-oracle" and r["agree"] is None


def test_tame():
    code, out = run_cli("tame", "--p", "7", "--d", "3", "--format", "json-lines")
    (r,) = records(out)
    assert code == 0 and r["partition"] == [] and r["agree"] is True


def test_text_output():
    code, out = run_cli("as", "--p", "2", "--m", "1")
    assert code == 0
    assert "formula=[1]" in out and "oracle=[1]" in out and "agree" in out


def test_exit_codes():
    assert run_cli("as", "--p", "4", "--m", "1")[0] == 2
    assert run_cli("as", "--p", "2", "--m", "1", "--d", "3")[0] == 2  # not Galois
    assert run_cli("as", "--p", "3", "--m", "2", "--d", "2")[0] == 1  # formula and oracle differ
    assert run_cli("as", "--p", "5", "--m", "7", "--max-dim", "20")[0] == 3
    assert run_cli("formula", "--p", "2", "--n", "2", "--breaks", "1,4")[0] == 2
    with pytest.raises(SystemExit):
        run_cli("as", "--p", "3")


def test_explicit_precision():
    code, out = run_cli("as", "--p", "3", "--m", "4", "--precision", "96", "--format", "json-lines")
    assert code == 0 and records(out)[0]["partition"] == [2, 1]
    # below the floor: fails fast as an input error
    assert run_cli("as", "--p", "3", "--m", "4", "--precision", "10")[0] == 2


def test_timing_flag():
    _, out = run_cli("as", "--p", "2", "--m", "1", "--timing", "--format", "json-lines")
    assert isinstance(records(out)[0]["elapsed_ms"], int)


def test_recheck_flag():
    code, out = run_cli("as", "--p", "3", "--m", "2", "--recheck", "--format", "json-lines")
    assert code == 0 and records(out)[0]["partition"] == [1, 1]


def test_selftest():
    code, out = run_cli("selftest")
    assert code == 0
    assert "0 mismatch, 0 errors" in out


def test_sweep_d1_no_mismatches():
    code, out = run_cli("sweep", "--p", "2,3", "--m", "1-6", "--d", "1", "--format", "json-lines")
    rows = records(out)
    assert code == 0
    assert [(r["p"], r["m"]) for r in rows] == [(2, 1), (2, 3), (2, 5), (3, 1), (3, 2), (3, 4), (3, 5)]
    assert all(r["agree"] for r in rows)


def test_sweep_records_errors_and_continues():
    reports = sweep(Grid((2,), (1, 3), (3,)))
    assert [r.status for r in reports] == ["not-galois", "ok"]
    assert exit_status(reports) == 2
    assert summarize(reports) == {"points": 2, "agree": 1, "mismatch": 0, "errors": 1}


def test_sweep_empty_grid():
    assert sweep(Grid((), ())) == []
    code, out = run_cli("sweep", "--p", "", "--m", "", "--format", "json-lines")
    assert code == 0 and out == ""


def test_sweep_limits():
    with pytest.raises(InputError):
        sweep(Grid((101,), (1,)))
    assert run_cli("sweep", "--p", "2", "--m", "1-500")[0] == 2


def test_sweep_parallel_matches_serial():
    grid = Grid((2, 3), (1, 2, 4, 5), (1, 2))
    serial = [render_json(r) for r in sweep(grid)]
    parallel = [render_json(r) for r in sweep(grid, workers=3)]
    assert serial == parallel


def test_sweep_deterministic_bytes():
    args = ("sweep", "--p", "2,3,5", "--m", "1-7", "--d", "1,2", "--format", "json-lines")
    assert run_cli(*args)[1] == run_cli(*args)[1]


def test_jobspec_invariants():
    with pytest.raises(InputError):
        JobSpec("oracle", 2, breaks=(1,))
    with pytest.raises(InputError):
        JobSpec("both", 2, m=1, n=2)
    with pytest.raises(InputError):
        JobSpec("formula", 2)
    with pytest.raises(InputError):
        JobSpec("nonsense", 2, m=1)


def test_both_mode_agree_is_partition_equality():
    for p, d, m in [(3, 1, 4), (3, 2, 2), (2, 3, 3), (5, 2, 3)]:
        r = run_job(JobSpec("both", p, m, d))
        assert r.agree == (r.formula_partition == r.oracle_partition)


parts = st.lists(st.integers(1, 9), max_size=6).map(lambda x: sorted(x, reverse=True))
opt_int = st.one_of(st.none(), st.integers(0, 10**6))

reports = st.builds(
    Report,
    mode=st.sampled_from(["formula", "oracle", "both"]),
    p=st.sampled_from([2, 3, 5, 7]),
    n=st.integers(0, 3),
    d=st.integers(1, 12),
    m=st.one_of(st.none(), st.integers(1, 200)),
    breaks=st.one_of(st.none(), st.lists(st.integers(1, 99), max_size=3)),
    partition=st.one_of(st.none(), parts),
    agree=st.one_of(st.none(), st.booleans()),
    stabilization_N=opt_int,
    elapsed_ms=opt_int,
    formula_partition=st.one_of(st.none(), parts),
    oracle_partition=st.one_of(st.none(), parts),
    i_table=st.one_of(st.none(), st.dictionaries(st.integers(1, 124), st.integers(0, 99), max_size=6)),
    label=st.one_of(st.none(), st.just("unverified-by-oracle")),
    status=st.sampled_from(["ok", "mismatch", "input", "not-galois", "no-stabilization", "resource"]),
    error=st.one_of(st.none(), st.text(max_size=30)),
)


@given(reports)
def test_report_roundtrip(r):
    line = render_json(r)
    assert "\n" not in line
    assert parse_json(line) == r


def test_parse_rejects_unknown_fields():
    with pytest.raises(InputError):
        parse_json('{"mode": "both", "bogus": 1}')
