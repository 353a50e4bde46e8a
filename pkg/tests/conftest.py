import pytest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.user_properties.append(("criterion", mark.args))


def pytest_terminal_summary(terminalreporter):
    status = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" not in props:
                continue
            if rep.when != "call" and rep.passed:
                continue
            n, name = props["criterion"]
            ok = status.get(n, (name, True))[1] and rep.passed
            status[n] = (name, ok)
    if not status:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(status):
        name, ok = status[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}")
