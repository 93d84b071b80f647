from quaydeck.bench.harness import BenchmarkHarness, BenchPlan, CellResult, run_benchmark, run_cell

__all__ = ['BenchmarkHarness', 'BenchPlan', 'CellResult', 'run_benchmark', 'run_cell']
