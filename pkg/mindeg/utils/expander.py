import re

_RANGE = re.compile(r"\{(\d+)\.\.(\d+)\}")
_LIST = re.compile(r"\{([^{}]+)\}")


def expand_pattern(pattern: str) -> list[str]:
    """Expand every {start..end} range and {a,b,c} list in a spec string.

    Examples:
        "D({1..3})" -> ["D(1)", "D(2)", "D(3)"]
        "H({3,5},3)" -> ["H(3,3)", "H(5,3)"]
        "G({3..5},3,{2,3})" -> the 6 combinations, ranges varying slowest
        "S(4)" -> ["S(4)"]
    """
    range_match = _RANGE.search(pattern)
    if range_match:
        start = int(range_match.group(1))
        end = int(range_match.group(2))
        prefix = pattern[: range_match.start()]
        suffix = pattern[range_match.end():]
        return [
            expanded
            for i in range(start, end + 1)
            for expanded in expand_pattern(f"{prefix}{i}{suffix}")
        ]

    list_match = _LIST.search(pattern)
    if list_match and "," in list_match.group(1):
        items = [item.strip() for item in list_match.group(1).split(",")]
        prefix = pattern[: list_match.start()]
        suffix = pattern[list_match.end():]
        return [
            expanded
            for item in items
            for expanded in expand_pattern(f"{prefix}{item}{suffix}")
        ]

    return [pattern]
