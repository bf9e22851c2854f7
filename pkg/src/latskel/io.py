"""Lattice text files and weighted-double-skeleton JSON."""
from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidWDS, LatskelError, ParseError
from .lattice import FiniteLattice, Poset, build_lattice
from .wds import WeightedDoubleSkeleton


def parse_lattice(text: str) -> FiniteLattice:
    name = None
    n = None
    covers: list[tuple[int, int]] = []
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if state == "header":
            if words[0] == "lattice":
                if name is not None:
                    raise ParseError("duplicate 'lattice' line", lineno)
                name = " ".join(words[1:])
            elif words[0] == "elements":
                if name is None:
                    raise ParseError("expected 'lattice <name>' first", lineno)
                if len(words) != 2 or not words[1].isdigit():
                    raise ParseError("expected 'elements <n>'", lineno)
                n = int(words[1])
            elif words == ["covers"]:
                if n is None:
                    raise ParseError("'covers' before 'elements'", lineno)
                state = "covers"
            else:
                raise ParseError(f"unexpected {words[0]!r}", lineno)
        elif state == "covers":
            if words == ["end"]:
                state = "done"
                continue
            if len(words) != 2:
                raise ParseError("expected a cover pair '<a> <b>'", lineno)
            try:
                a, b = int(words[0]), int(words[1])
            except ValueError:
                raise ParseError("cover endpoints must be integers", lineno) from None
            if not (0 <= a < n and 0 <= b < n):
                raise ParseError(f"element id out of range 0..{n - 1}", lineno)
            covers.append((a, b))
        else:
            raise ParseError("content after 'end'", lineno)
    if state != "done":
        raise ParseError("missing 'end'" if state == "covers" else "missing 'covers' section")
    return build_lattice(n, covers, name=name or "")


def format_lattice(L: FiniteLattice, name: str | None = None) -> str:
    lines = [f"lattice {name if name is not None else (L.name or 'L')}", f"elements {L.n}", "covers"]
    lines += [f"{a} {b}" for a, b in L.covers]
    lines.append("end")
    return "\n".join(lines) + "\n"


def read_lattice(path) -> FiniteLattice:
    return parse_lattice(Path(path).read_text(encoding="utf-8"))


def write_lattice(L: FiniteLattice, path, name: str | None = None) -> None:
    Path(path).write_text(format_lattice(L, name), encoding="utf-8")


def wds_to_dict(s: WeightedDoubleSkeleton) -> dict:
    return {
        "P": {"n": s.P.n, "covers": [list(c) for c in s.P.covers]},
        "K": {"n": s.K.n, "covers": [list(c) for c in s.K.covers]},
        "eta0": list(s.eta0),
        "eta1": list(s.eta1),
        "w": [[a, b, s.w[(a, b)]] for a, b in sorted(s.w)],
    }


def wds_to_json(s: WeightedDoubleSkeleton) -> str:
    return json.dumps(wds_to_dict(s), separators=(",", ":")) + "\n"


def wds_from_dict(data: dict) -> WeightedDoubleSkeleton:
    """Build and validate; every violation names the failed axiom."""
    try:
        P = Poset.from_covers(int(data["P"]["n"]), [tuple(c) for c in data["P"]["covers"]])
        kn = int(data["K"]["n"])
        K = build_lattice(kn, [tuple(c) for c in data["K"]["covers"]])
        eta0 = tuple(int(v) for v in data["eta0"])
        eta1 = tuple(int(v) for v in data["eta1"])
        w = {}
        for a, b, v in data["w"]:
            if (a, b) in w:
                raise InvalidWDS("weights", f"duplicate weight for ({a}, {b})")
            w[(int(a), int(b))] = v
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidWDS("format", f"malformed field: {exc}") from None
    except LatskelError as exc:
        if isinstance(exc, InvalidWDS):
            raise
        raise InvalidWDS("structure", str(exc)) from None
    s = WeightedDoubleSkeleton(P, K, eta0, eta1, w)
    s.validate()
    return s


def wds_from_json(text: str) -> WeightedDoubleSkeleton:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidWDS("format", f"not JSON: {exc}") from None
    return wds_from_dict(data)


def read_wds(path) -> WeightedDoubleSkeleton:
    return wds_from_json(Path(path).read_text(encoding="utf-8"))


def write_wds(s: WeightedDoubleSkeleton, path) -> None:
    Path(path).write_text(wds_to_json(s), encoding="utf-8")
