import pytest


def pytest_runtest_logreport(report):
    # the acceptance module prints its own [PASS] lines; mirror failures so
    # every criterion always reports one line either way
    if report.when == "call" and report.failed and \
            "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[FAIL] {name}")
