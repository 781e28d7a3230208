"""Per-user Has/Wants side information and XOR decodability predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "SideInformation",
    "EncodedFile",
    "is_instantly_decodable",
    "decoded_file",
]


@dataclass(frozen=True)
class SideInformation:
    """Files each user already holds (has) and currently requests (wants).

    File identifiers are dense integers 0..num_files-1 and a user's wants set
    is always disjoint from its has set.
    """

    has: tuple[frozenset[int], ...]
    wants: tuple[frozenset[int], ...]
    num_files: int

    def __post_init__(self):
        if len(self.has) != len(self.wants):
            raise ValueError("has and wants must cover the same users")
        for u, (h, w) in enumerate(zip(self.has, self.wants)):
            if h & w:
                raise ValueError(f"user {u}: wants and has overlap: {sorted(h & w)}")
            for f in h | w:
                if not 0 <= f < self.num_files:
                    raise ValueError(f"user {u}: file index {f} out of range")

    @classmethod
    def from_lists(cls, has: Iterable[Iterable[int]], wants: Iterable[Iterable[int]],
                   num_files: int) -> "SideInformation":
        return cls(tuple(frozenset(h) for h in has),
                   tuple(frozenset(w) for w in wants), num_files)

    @property
    def num_users(self) -> int:
        return len(self.has)


@dataclass(frozen=True)
class EncodedFile:
    """A nonempty XOR combination of source files."""

    files: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "files", frozenset(self.files))
        if not self.files:
            raise ValueError("encoded combination must contain at least one file")


def is_instantly_decodable(k: EncodedFile, u: int, si: SideInformation) -> bool:
    """True when user u can extract a new wanted file from combination k.

    Requires exactly one wanted file in the combination and every other
    combined file already held, so the XOR is invertible in one reception.
    """
    if not 0 <= u < si.num_users:
        raise IndexError(f"user index {u} out of range [0, {si.num_users})")
    wanted = k.files & si.wants[u]
    if len(wanted) != 1:
        return False
    return (k.files - si.wants[u]) <= si.has[u]


def decoded_file(k: EncodedFile, u: int, si: SideInformation) -> int:
    """The unique wanted file user u extracts from k; k must be decodable for u."""
    if not is_instantly_decodable(k, u, si):
        raise ValueError(f"combination {sorted(k.files)} is not instantly decodable for user {u}")
    return next(iter(k.files & si.wants[u]))
