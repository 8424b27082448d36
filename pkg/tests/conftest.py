import pytest

from torix.fan import blow_up, make_hirzebruch, make_projective_plane


def named_fans():
    p2 = make_projective_plane()
    five = blow_up(make_hirzebruch(0), 0)
    six = blow_up(blow_up(blow_up(p2, 0), 2), 4)
    return {
        "p2": p2,
        "f0": make_hirzebruch(0),
        "f1": make_hirzebruch(1),
        "f2": make_hirzebruch(2),
        "blowup5": five,
        "blowup6": six,
    }


@pytest.fixture(scope="session")
def fans():
    return named_fans()


ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
