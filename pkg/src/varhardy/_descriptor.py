"""Flat ``name(arg,...)`` descriptor strings used by the CLI and reports."""
import re

_PATTERN = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(([^()]*)\))?\s*$")


def parse(text):
    """Split ``"kind(1,2.5)"`` into ``("kind", [1.0, 2.5])``.

    A bare name (``"zero"``) parses to an empty parameter list. Nested
    parentheses are rejected on purpose.
    """
    match = _PATTERN.match(text)
    if match is None:
        raise ValueError(f"malformed descriptor {text!r}")
    name, body = match.group(1).lower(), match.group(2)
    params = []
    if body is not None and body.strip():
        for chunk in body.split(","):
            try:
                params.append(float(chunk))
            except ValueError:
                raise ValueError(f"non-numeric parameter {chunk.strip()!r} in {text!r}") from None
    return name, params


def _fmt(x):
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return f"{x:.1f}"
    return repr(x)


def format(name, params):
    return f"{name}({','.join(_fmt(p) for p in params)})"
