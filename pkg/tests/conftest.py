import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "golden U2 values reproduce within 0.05 bits",
    2: "split penalties of 2 and 1 bits",
    3: "ordering claims and delta sweep",
    4: "prior identity and Monte Carlo on fig2-b",
    5: "codec laws to 2^16",
    6: "counterfactual optimality on 200 random scenarios",
    7: "scale invariance and delta slope",
    8: "self-reported misprediction reproduced",
}

_results: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _results.setdefault(marker.args[0], []).append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        if n not in _results:
            continue
        status = "PASS" if all(_results[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {label}")
