"""Per-criterion outcomes collected while the acceptance tests run."""

RESULTS: list[tuple[int, str, bool, str]] = []


def record(criterion: int, name: str, ok: bool, detail: str = "") -> bool:
    RESULTS.append((criterion, name, bool(ok), detail))
    return ok
