def pytest_terminal_summary(terminalreporter):
    """Surface the per-criterion verdict lines even when capture is on."""
    lines = set()
    for reports in terminalreporter.stats.values():
        for rep in reports:
            if getattr(rep, "when", "") != "call":
                continue
            for line in getattr(rep, "capstdout", "").splitlines():
                if line.startswith(("criterion", "observed")):
                    lines.add(line)
    if lines:
        terminalreporter.section("acceptance verdicts")
        for line in sorted(lines):
            terminalreporter.write_line(line)
