import pathlib
import subprocess
import sys


def test_benchmark_quick_smoke():
    repo = pathlib.Path(__file__).resolve().parents[1]
    proc = subprocess.run(
        [sys.executable, str(repo / "benchmarks" / "bench_backends.py"), "--quick"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert "power_scan" in proc.stdout
    assert "enumeration" in proc.stdout
