import sys
from pathlib import Path

import pytest

from homlab import bench, kernel
from homlab.errors import HomlabError


def test_certified_rows_have_zero_nodes():
    rows = bench.run_bench("tower", ("plain", "clique"))
    clique_no = [r for r in rows if r.strategy == "clique" and r.verdict == "no"]
    assert clique_no and all(r.nodes == 0 for r in clique_no)
    plain = {r.instance: r.verdict for r in rows if r.strategy == "plain"}
    assert all(plain[r.instance] == r.verdict for r in rows)


def test_threads_preserve_row_order():
    a = [(r.instance, r.strategy, r.verdict, r.nodes) for r in bench.run_bench("catalog", threads=1)]
    b = [(r.instance, r.strategy, r.verdict, r.nodes) for r in bench.run_bench("catalog", threads=4)]
    assert a == b


def test_divergence_is_a_hard_failure(monkeypatch):
    def fake(inst, strategy, budget_ms=None):
        return bench.Row(inst.name, strategy, "yes" if strategy == "plain" else "no", 1, 0.0)

    monkeypatch.setattr(bench, "run_strategy", fake)
    with pytest.raises(bench.BenchDivergence):
        bench.run_bench("tower", ("plain", "clique"))


def test_unknown_suite_and_strategy():
    with pytest.raises(HomlabError):
        bench.run_bench("nope")
    with pytest.raises(HomlabError):
        bench.run_bench("tower", ("plain", "magic"))


def test_csv_header():
    rows = bench.run_bench("tower", ("plain",))
    text = bench.rows_to_csv(rows, with_timing=False)
    assert text.splitlines()[0] == ",".join(bench.CSV_FIELDS)


@pytest.mark.skipif(kernel.compiled_search is None, reason="compiled kernel not built")
def test_kernel_benchmark_smoke():
    sys.path.insert(0, str(Path(__file__).parent.parent / "benchmarks"))
    import bench_kernels

    rows = bench_kernels.run(repeat=1, quick=True)
    assert len(rows) == len(bench_kernels.QUICK)
