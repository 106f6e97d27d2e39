"""Closed subsets of Cantor space presented by pruned binary trees."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product


class ClosedSetError(ValueError):
    pass


def _check_word(w: str, what: str = "word") -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ClosedSetError(f"{what} must be a binary word, got {w!r}")
    return w


@dataclass(frozen=True)
class ClosedSetSpec:
    """A membership oracle on binary words plus the presentation it came from.

    ``kind`` is one of ``full``, ``singleton`` (``u (v)^w``), ``cylinders``
    (a finite union of cylinder sets), ``dfa`` (start state 0) or ``table``
    (an explicit finite set of words, used for validation experiments).
    """

    kind: str
    words: tuple = ()          # cylinders / table
    u: str = ""                # singleton prefix
    v: str = ""                # singleton period
    states: int = 0            # dfa
    delta: tuple = ()          # dfa: sorted ((q, bit), q') pairs
    accepting: frozenset = field(default_factory=frozenset)

    # --------------------------------------------------------- constructors
    @classmethod
    def full(cls) -> "ClosedSetSpec":
        return cls("full")

    @classmethod
    def singleton(cls, u: str, v: str) -> "ClosedSetSpec":
        _check_word(u, "prefix")
        if not _check_word(v, "period"):
            raise ClosedSetError("singleton period must be nonempty")
        return cls("singleton", u=u, v=v)

    @classmethod
    def cylinders(cls, words) -> "ClosedSetSpec":
        ws = tuple(sorted(set(_check_word(w) for w in words), key=lambda w: (len(w), w)))
        if not ws:
            raise ClosedSetError("a cylinder union needs at least one word")
        return cls("cylinders", words=ws)

    @classmethod
    def dfa(cls, states: int, delta: dict, accepting) -> "ClosedSetSpec":
        if states < 1:
            raise ClosedSetError("a dfa needs at least one state")
        items = []
        for (q, b), q2 in delta.items():
            if not (0 <= q < states and 0 <= q2 < states) or b not in (0, 1, "0", "1"):
                raise ClosedSetError(f"bad transition {q}:{b}>{q2}")
            items.append(((q, int(b)), q2))
        acc = frozenset(accepting)
        if not all(0 <= q < states for q in acc):
            raise ClosedSetError("accepting state out of range")
        return cls("dfa", states=states, delta=tuple(sorted(items)), accepting=acc)

    @classmethod
    def table(cls, words) -> "ClosedSetSpec":
        return cls("table", words=tuple(sorted(set(_check_word(w) for w in words),
                                               key=lambda w: (len(w), w))))

    # ---------------------------------------------------------- membership
    def __contains__(self, w: str) -> bool:
        return _member(self, w)

    def member(self, w: str) -> bool:
        return _member(self, w)

    def children(self, w: str) -> tuple[str, ...]:
        return tuple(w + b for b in "01" if _member(self, w + b))

    @property
    def is_singleton(self) -> bool:
        return self.kind == "singleton"

    def point(self, n: int) -> str:
        """The first ``n`` letters of the unique point of a singleton spec."""
        if not self.is_singleton:
            raise ClosedSetError("not a singleton presentation")
        s = self.u
        while len(s) < n:
            s += self.v
        return s[:n]

    def words_at(self, depth: int) -> list[str]:
        level = [""] if _member(self, "") else []
        for _ in range(depth):
            level = [c for w in level for c in self.children(w)]
        return level

    def to_text(self) -> str:
        if self.kind == "full":
            return "closedset full"
        if self.kind == "singleton":
            return f"closedset singleton {self.u}({self.v})^w"
        if self.kind == "cylinders":
            return "closedset cylinders " + " ".join(w if w else "-" for w in self.words)
        if self.kind == "table":
            return "closedset table " + " ".join(w if w else "-" for w in self.words)
        trans = ",".join(f"{q}:{b}>{q2}" for (q, b), q2 in self.delta)
        acc = ",".join(str(q) for q in sorted(self.accepting))
        return f"closedset dfa {self.states} {trans or '-'} {acc or '-'}"

    def __str__(self) -> str:
        return self.to_text()


@lru_cache(maxsize=1 << 18)
def _member(c: ClosedSetSpec, w: str) -> bool:
    if c.kind == "full":
        return True
    if c.kind == "singleton":
        return c.point(len(w)) == w
    if c.kind == "cylinders":
        return any(x.startswith(w) or w.startswith(x) for x in c.words)
    if c.kind == "table":
        return w in c.words
    delta = dict(c.delta)
    q = 0
    for b in w:
        q = delta.get((q, int(b)))
        if q is None:
            return False
    return q in c.accepting


def parse_closed_set(text: str) -> ClosedSetSpec:
    """Parse one ``closedset ...`` line."""
    words = text.split()
    if not words or words[0] != "closedset":
        raise ClosedSetError("expected 'closedset <kind> ...'")
    if len(words) < 2:
        raise ClosedSetError("missing closed-set kind")
    kind, args = words[1], words[2:]
    if kind == "full":
        if args:
            raise ClosedSetError("'full' takes no arguments")
        return ClosedSetSpec.full()
    if kind == "singleton":
        if len(args) != 1:
            raise ClosedSetError("'singleton' takes one argument u(v)^w")
        a = args[0]
        if not (a.endswith(")^w") and "(" in a):
            raise ClosedSetError(f"singleton must look like u(v)^w, got {a!r}")
        u, _, rest = a.partition("(")
        return ClosedSetSpec.singleton(u, rest[:-3])
    if kind in ("cylinders", "table"):
        ws = ["" if w == "-" else w for w in args]
        return ClosedSetSpec.cylinders(ws) if kind == "cylinders" else ClosedSetSpec.table(ws)
    if kind == "dfa":
        if len(args) != 3:
            raise ClosedSetError("'dfa' takes <states> <transitions> <accepting>")
        if not args[0].isdigit():
            raise ClosedSetError("dfa state count must be a natural number")
        delta = {}
        if args[1] != "-":
            for t in args[1].split(","):
                try:
                    qb, q2 = t.split(">")
                    q, b = qb.split(":")
                    key = (int(q), int(b))
                    if key in delta:
                        raise ClosedSetError(f"duplicate transition {qb}")
                    delta[key] = int(q2)
                except ValueError as exc:
                    if isinstance(exc, ClosedSetError):
                        raise
                    raise ClosedSetError(f"bad transition {t!r}, expected q:b>q'") from None
        acc = [] if args[2] == "-" else args[2].split(",")
        if not all(a.isdigit() for a in acc):
            raise ClosedSetError("accepting states must be natural numbers")
        return ClosedSetSpec.dfa(int(args[0]), delta, [int(a) for a in acc])
    raise ClosedSetError(f"unknown closed-set kind {kind!r}")


@dataclass
class ValidationReport:
    depth: int
    violations: list
    warnings: list

    @property
    def valid(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.valid and not self.warnings:
            return f"valid to depth {self.depth}"
        return "\n".join(self.violations + ["warning: " + w for w in self.warnings])


def validate_closed_set(c: ClosedSetSpec, depth: int) -> ValidationReport:
    """Check nonemptiness, prefix closure and prunedness on all words up to ``depth``.

    DFA presentations additionally get an exact state-level check that is
    independent of ``depth``.
    """
    violations, warnings = [], []
    if not c.member(""):
        violations.append("empty set: the empty word is not a member")
    for n in range(depth + 1):
        for bits in product("01", repeat=n):
            w = "".join(bits)
            if not c.member(w):
                continue
            if w and not c.member(w[:-1]):
                violations.append(f"{w} is a member but its prefix {w[:-1] or '(empty)'} is not")
            if not c.children(w):
                violations.append(f"{w or '(empty)'} has no child")
    if c.kind == "dfa":
        violations += [v for v in _dfa_violations(c) if v not in violations]
        if not violations and all(len(c.words_at(n)) == 1 for n in range(depth + 1)):
            warnings.append(f"only one branch up to depth {depth}; a singleton automaton "
                            "is handled by the general construction")
    return ValidationReport(depth, violations, warnings)


def _dfa_violations(c: ClosedSetSpec) -> list[str]:
    delta = dict(c.delta)
    reach, stack = {0}, [0]
    while stack:
        q = stack.pop()
        for b in (0, 1):
            q2 = delta.get((q, b))
            if q2 is not None and q2 not in reach:
                reach.add(q2)
                stack.append(q2)
    out = []
    for q in sorted(reach):
        kids = [delta[(q, b)] for b in (0, 1) if (q, b) in delta]
        if q in c.accepting and not any(q2 in c.accepting for q2 in kids):
            out.append(f"state {q} is accepting but has no accepting successor (dead end)")
        if q not in c.accepting and _reaches_accepting(delta, c.accepting, q):
            out.append(f"state {q} is rejecting but leads to an accepting state (not prefix-closed)")
    return out


def _reaches_accepting(delta: dict, accepting, q) -> bool:
    seen, stack = {q}, [q]
    while stack:
        x = stack.pop()
        for b in (0, 1):
            y = delta.get((x, b))
            if y is None or y in seen:
                continue
            if y in accepting:
                return True
            seen.add(y)
            stack.append(y)
    return False
