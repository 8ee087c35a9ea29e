def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS and "test_acceptance" not in str(terminalreporter.stats):
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        ok, detail = RESULTS.get(n, (False, "did not complete (raised before checking)"))
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
