"""Rank plus endspace-pair data for the graphs whose PHE type is known exactly."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

INF = math.inf


class DescriptorError(ValueError):
    pass


@dataclass(frozen=True)
class FinitePair:
    """``ends`` points, ``loop_ends`` of them accumulated by loops."""

    ends: int
    loop_ends: int = 0

    def validate(self) -> None:
        if self.ends < 1:
            raise DescriptorError("FinitePair needs at least one end")
        if not 0 <= self.loop_ends <= self.ends:
            raise DescriptorError(f"loop ends {self.loop_ends} must lie in 0..{self.ends}")

    @property
    def has_loops(self) -> bool:
        return self.loop_ends > 0


@dataclass(frozen=True)
class ConvergentSequence:
    """The space {1/n} u {0}; the limit point is the only possible loop end."""

    limit_in_loops: bool

    def validate(self) -> None:
        pass

    @property
    def has_loops(self) -> bool:
        return self.limit_in_loops


CANTOR_LOOP_PARTS = ("empty", "all", "clopen")


@dataclass(frozen=True)
class CantorPair:
    """Cantor space with an empty, full, or proper nonempty clopen loop part."""

    loop_part: str

    def validate(self) -> None:
        if self.loop_part not in CANTOR_LOOP_PARTS:
            raise DescriptorError(f"loop_part must be one of {CANTOR_LOOP_PARTS}")

    @property
    def has_loops(self) -> bool:
        return self.loop_part != "empty"


EndPairDescriptor = Union[FinitePair, ConvergentSequence, CantorPair]


@dataclass(frozen=True)
class StandardGraphDescriptor:
    """PHE invariant: rank (``math.inf`` for infinite) and endspace pair.

    Validation enforces rank infinite exactly when some end is accumulated by
    loops: infinitely many independent cycles must pile up at some end.
    """

    rank: float
    endpair: EndPairDescriptor

    def __post_init__(self):
        r = self.rank
        if r != INF:
            if int(r) != r or r < 0:
                raise DescriptorError(f"rank must be a natural number or inf, got {r!r}")
            object.__setattr__(self, "rank", int(r))

    @property
    def infinite_rank(self) -> bool:
        return self.rank == INF

    def validate(self) -> "StandardGraphDescriptor":
        self.endpair.validate()
        if self.infinite_rank and not self.endpair.has_loops:
            raise DescriptorError("infinite rank requires an end accumulated by loops")
        if not self.infinite_rank and self.endpair.has_loops:
            raise DescriptorError("an end accumulated by loops forces infinite rank")
        return self

    def to_text(self) -> str:
        r = "inf" if self.infinite_rank else str(self.rank)
        ep = self.endpair
        if isinstance(ep, FinitePair):
            return f"descriptor rank={r} ends={ep.ends} loopends={ep.loop_ends}"
        if isinstance(ep, ConvergentSequence):
            return f"descriptor rank={r} endpair=omega+1:{int(ep.limit_in_loops)}"
        return f"descriptor rank={r} endpair=cantor:{ep.loop_part}"

    def __str__(self) -> str:
        return self.to_text()


def parse_descriptor(text: str) -> StandardGraphDescriptor:
    """Parse ``[descriptor] rank=.. ends=.. loopends=..`` or ``rank=.. endpair=..``."""
    words = text.split()
    if words and words[0] == "descriptor":
        words = words[1:]
    fields = {}
    for w in words:
        key, sep, val = w.partition("=")
        if not sep:
            raise DescriptorError(f"expected key=value, got {w!r}")
        if key not in ("rank", "ends", "loopends", "endpair"):
            raise DescriptorError(f"unknown key {key!r}")
        if key in fields:
            raise DescriptorError(f"duplicate key {key!r}")
        fields[key] = val
    if "rank" not in fields:
        raise DescriptorError("missing rank=")
    rank = INF if fields["rank"] in ("inf", "infinite") else _nat(fields["rank"], "rank")
    if "endpair" in fields:
        if "ends" in fields or "loopends" in fields:
            raise DescriptorError("endpair= excludes ends=/loopends=")
        kind, _, arg = fields["endpair"].partition(":")
        if kind == "cantor":
            ep: EndPairDescriptor = CantorPair(arg)
        elif kind == "omega+1":
            if arg not in ("0", "1"):
                raise DescriptorError("omega+1 flag must be 0 or 1")
            ep = ConvergentSequence(arg == "1")
        else:
            raise DescriptorError(f"unknown endpair kind {kind!r}")
    else:
        for key in ("ends", "loopends"):
            if key not in fields:
                raise DescriptorError(f"missing {key}= (or endpair=)")
        ep = FinitePair(_nat(fields["ends"], "ends"), _nat(fields["loopends"], "loopends"))
    return StandardGraphDescriptor(rank, ep).validate()


def _nat(s: str, what: str) -> int:
    if not s.isdigit():
        raise DescriptorError(f"{what} must be a natural number, got {s!r}")
    return int(s)
