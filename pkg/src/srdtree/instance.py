"""Plain-text instance files and the seeded generator behind all fixtures.

File format, version tag ``tif v1``::

    # comment lines start with '#'
    tif v1
    n <edge_count>
    root <node_name>
    edge <edge_id> <parent> <child> <w> <u> <c>
    param K <decimal>        # optional budget
    param D <decimal>        # optional demand
    param N <int>            # optional change bound

Fields are single-space separated, decimals use '.', edge ids must be
1..n in any order, and there is exactly one root line.  Unknown directives
are errors.  ``serialize`` always emits the canonical ordering (header,
edges by ascending id, then K, D, N), so parse and serialize round-trip
byte for byte.

The generator draws every random quantity from SplitMix64 so another
implementation can reproduce fixtures exactly.  State update per draw::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

A float in [0, 1) is (output >> 11) * 2**-53 and an integer in [0, m) is
output mod m.  Draw order: topology (only the uniform-random-parent shape
consumes draws, one per node from the third node on), then per edge in id
order the triple w, slack, c, then the budget, the demand and the change
bound.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadConfig,
    BoundViolation,
    DuplicateEdgeId,
    InstanceSyntaxError,
    MissingHeader,
)
from .tree import EdgeAttrs, RootedTree, build_tree, leaf_counts

SHAPES = ("uniform-random-parent", "caterpillar", "star", "binary")

_MASK = (1 << 64) - 1


class SplitMix64:
    """Tiny portable PRNG; see the module docstring for the update rule."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def next_int(self, m: int) -> int:
        return self.next_u64() % m


@dataclass(frozen=True)
class ProblemParams:
    """Optional solve parameters carried by an instance file.

    The demand surplus (demand minus the starting distance sum) is always
    recomputed by the solvers from D and the tree, never stored.
    """

    K: object = None
    D: object = None
    N: int | None = None


@dataclass(frozen=True)
class InstanceFile:
    """A parsed instance: the tree, its edge attributes and any parameters."""

    tree: RootedTree
    attrs: EdgeAttrs
    params: ProblemParams


@dataclass(frozen=True)
class GenConfig:
    """Generator settings; attribute ranges must be positive."""

    node_count: int
    seed: int
    w_max: float = 10.0
    u_slack_max: float = 10.0
    c_max: float = 10.0
    shape: str = "uniform-random-parent"


def parse(text: str, exact: bool = False) -> InstanceFile:
    """Parse instance text; with ``exact`` decimals become Fractions."""
    convert = Fraction if exact else float
    header_seen = False
    declared_n = None
    root_decl = None
    root_line = 0
    edges = []
    w, u, c = {}, {}, {}
    params = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if not header_seen:
            if fields == ["tif", "v1"]:
                header_seen = True
                continue
            raise MissingHeader(f"line {lineno}: expected 'tif v1', got {line!r}")

        directive = fields[0]
        if directive == "n":
            if len(fields) != 2 or declared_n is not None:
                raise InstanceSyntaxError(lineno, "bad or repeated n line")
            declared_n = _parse_int(fields[1], lineno)
        elif directive == "root":
            if len(fields) != 2 or root_decl is not None:
                raise InstanceSyntaxError(lineno, "bad or repeated root line")
            root_decl = fields[1]
            root_line = lineno
        elif directive == "edge":
            if len(fields) != 7:
                raise InstanceSyntaxError(lineno, "edge needs id, parent, child, w, u, c")
            eid = _parse_int(fields[1], lineno)
            if eid in w:
                raise DuplicateEdgeId(f"line {lineno}: edge id {eid} repeated")
            parent, child = fields[2], fields[3]
            we = _parse_decimal(fields[4], lineno, convert)
            ue = _parse_decimal(fields[5], lineno, convert)
            ce = _parse_decimal(fields[6], lineno, convert)
            if we < 0 or ue < we:
                raise BoundViolation(lineno, f"edge {eid}: need 0 <= w <= u")
            if ce <= 0:
                raise BoundViolation(lineno, f"edge {eid}: cost must be positive")
            edges.append((eid, parent, child))
            w[eid], u[eid], c[eid] = we, ue, ce
        elif directive == "param":
            if len(fields) != 3 or fields[1] not in ("K", "D", "N"):
                raise InstanceSyntaxError(lineno, "param needs K, D or N plus a value")
            if fields[1] in params:
                raise InstanceSyntaxError(lineno, f"param {fields[1]} repeated")
            if fields[1] == "N":
                params["N"] = _parse_int(fields[2], lineno)
            else:
                params[fields[1]] = _parse_decimal(fields[2], lineno, convert)
        else:
            raise InstanceSyntaxError(lineno, f"unknown directive {directive!r}")

    if not header_seen:
        raise MissingHeader("no 'tif v1' line")
    if declared_n is None or root_decl is None:
        raise MissingHeader("missing n or root line")
    if declared_n != len(edges):
        raise InstanceSyntaxError(0, f"n says {declared_n} edges, file has {len(edges)}")

    tree = build_tree(edges, EdgeAttrs(w, u, c))
    if tree.root != root_decl:
        raise InstanceSyntaxError(
            root_line, f"root line names {root_decl!r} but the edges root at {tree.root!r}")
    return InstanceFile(tree, EdgeAttrs(w, u, c),
                        ProblemParams(K=params.get("K"), D=params.get("D"),
                                      N=params.get("N")))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceSyntaxError(lineno, f"expected an integer, got {token!r}") from None


def _parse_decimal(token: str, lineno: int, convert):
    try:
        value = convert(token)
    except (ValueError, ZeroDivisionError):
        raise InstanceSyntaxError(lineno, f"expected a decimal, got {token!r}") from None
    if isinstance(value, float) and not value == value:  # NaN guard
        raise InstanceSyntaxError(lineno, "NaN is not a value")
    if isinstance(value, float) and value in (float("inf"), float("-inf")):
        raise InstanceSyntaxError(lineno, "infinite values are not allowed")
    return value


def _format_number(x) -> str:
    """Shortest exact decimal for a float, int or terminating Fraction."""
    if isinstance(x, bool):
        raise ValueError("booleans are not numbers here")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        den = x.denominator
        twos = fives = 0
        while den % 2 == 0:
            den //= 2
            twos += 1
        while den % 5 == 0:
            den //= 5
            fives += 1
        if den != 1:
            raise ValueError(f"{x} has no terminating decimal form")
        digits = max(twos, fives)
        scaled = x * 10 ** digits
        body = str(abs(int(scaled))).rjust(digits + 1, "0")
        sign = "-" if x < 0 else ""
        return f"{sign}{body[:-digits]}.{body[-digits:]}"
    raise TypeError(f"cannot format {type(x).__name__}")


def serialize(inst: InstanceFile) -> str:
    """Canonical text for an instance; parse(serialize(x)) round-trips."""
    tree, attrs, params = inst.tree, inst.attrs, inst.params
    lines = ["tif v1", f"n {tree.n}", f"root {tree.root}"]
    by_id = {eid: (parent, child) for eid, parent, child in tree.edges}
    for eid in sorted(by_id):
        parent, child = by_id[eid]
        lines.append(
            f"edge {eid} {parent} {child} "
            f"{_format_number(attrs.w[eid])} {_format_number(attrs.u[eid])} "
            f"{_format_number(attrs.c[eid])}")
    if params.K is not None:
        lines.append(f"param K {_format_number(params.K)}")
    if params.D is not None:
        lines.append(f"param D {_format_number(params.D)}")
    if params.N is not None:
        lines.append(f"param N {params.N}")
    return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    """Content hash of instance text, for run reports and transcripts."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _topology(shape: str, n: int, rng: SplitMix64):
    """Parent node name for each child v1..vn."""
    parents = ["s"]
    for i in range(2, n + 1):
        if shape == "uniform-random-parent":
            j = rng.next_int(i)  # 0 picks the root, else v_j with j < i
            parents.append("s" if j == 0 else f"v{j}")
        elif shape == "star":
            parents.append("s")
        elif shape == "caterpillar":
            # odd indices extend the spine, even indices hang off it
            parents.append(f"v{i - 2}" if i % 2 == 1 else f"v{i - 1}")
        elif shape == "binary":
            parents.append(f"v{i // 2}")
    return parents


def generate(config: GenConfig) -> InstanceFile:
    """Deterministic random instance with budget, demand and change bound.

    The budget lands in (0, max full-raise cost], the demand in
    [w(T), u(T)) and the change bound in 1..n, so every generated instance
    is solvable territory for all eight problems.
    """
    if config.node_count < 2:
        raise BadConfig("need at least two nodes")
    if config.shape not in SHAPES:
        raise BadConfig(f"unknown shape {config.shape!r}")
    if config.w_max <= 0 or config.u_slack_max <= 0 or config.c_max <= 0:
        raise BadConfig("attribute ranges must be positive")

    n = config.node_count - 1
    rng = SplitMix64(config.seed)
    parents = _topology(config.shape, n, rng)
    edges = [(i, parents[i - 1], f"v{i}") for i in range(1, n + 1)]

    w, u, c = {}, {}, {}
    for i in range(1, n + 1):
        w[i] = rng.next_float() * config.w_max
        u[i] = w[i] + rng.next_float() * config.u_slack_max
        c[i] = config.c_max * (1.0 - rng.next_float())

    attrs = EdgeAttrs(w, u, c)
    tree = build_tree(edges, attrs)
    counts = leaf_counts(tree)
    w_total = sum(counts[e] * w[e] for e in tree.edge_ids)
    u_total = sum(counts[e] * u[e] for e in tree.edge_ids)
    top_raise = max(c[e] * (u[e] - w[e]) for e in tree.edge_ids)

    budget = top_raise * (1.0 - rng.next_float())
    demand = w_total + rng.next_float() * (u_total - w_total)
    changes = 1 + rng.next_int(n)
    return InstanceFile(tree, attrs, ProblemParams(K=budget, D=demand, N=changes))
