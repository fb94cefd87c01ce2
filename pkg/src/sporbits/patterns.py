"""Pattern containment for fixed-point-free involutions.

A host involution includes a pattern when some index set that the host
permutes (necessarily a union of its arcs) standardizes to the pattern's
word.  This is stricter than classical pattern containment: the indices of
an occurrence must be closed under the host involution.

The 17 obstruction patterns listed here are exactly the ones whose presence
makes an orbit closure rationally singular; everything downstream
(`avoids_all_bad`, the factorization refusal, the irregular-vertex
certificate) is driven by this list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .involutions import FpfInvolution, InvolutionError

BAD_PATTERN_WORDS: tuple[str, ...] = (
    "351624",
    "64827153",
    "57681324",
    "53281764",
    "43218765",
    "65872143",
    "21654387",
    "21563487",
    "34127856",
    "43217856",
    "34128765",
    "36154287",
    "21754836",
    "63287154",
    "54821763",
    "46513287",
    "21768435",
)

BAD_PATTERNS: tuple[FpfInvolution, ...] = tuple(
    FpfInvolution(tuple(int(c) for c in s)) for s in BAD_PATTERN_WORDS
)

# Audit data for the obstruction patterns: poset rank and the labels of the
# edges incident to the bottom vertex of the full interval graph.  This is a
# frozen external reference copy, deliberately not recomputed here, so that
# `verify-table` diffs the code against an independent record.
BOTTOM_VERTEX_TABLE: dict[str, tuple[int, tuple[str, ...]]] = {
    "351624": (4, ("12", "13", "14", "23", "24")),
    "64827153": (5, ("12", "13", "23", "24", "25", "34", "35")),
    "57681324": (5, ("12", "13", "14", "23", "24", "34")),
    "53281764": (7, ("12", "13", "14", "23", "24", "25", "34", "35")),
    "43218765": (8, ("12", "13", "14", "15", "23", "24", "25", "26", "34", "35")),
    "65872143": (4, ("12", "13", "23", "24", "34")),
    "21654387": (10, ("12", "13", "14", "15", "16", "17", "23", "24", "25", "26", "34", "35")),
    "21563487": (11, ("12", "13", "14", "15", "16", "17", "23", "24", "25", "26", "34", "35")),
    "34127856": (10, ("12", "13", "14", "15", "16", "23", "24", "25", "26", "34", "35")),
    "43217856": (9, ("12", "13", "14", "15", "23", "24", "25", "26", "34", "35")),
    "34128765": (9, ("12", "13", "14", "15", "16", "23", "24", "25", "26", "34", "35")),
    "36154287": (9, ("12", "13", "14", "15", "16", "23", "24", "25", "26", "34", "35")),
    "21754836": (9, ("12", "13", "14", "15", "16", "23", "24", "25", "26", "34", "35")),
    "63287154": (6, ("12", "13", "23", "24", "25", "34", "35")),
    "54821763": (6, ("12", "13", "23", "24", "25", "34", "35")),
    "46513287": (8, ("12", "13", "14", "15", "23", "24", "25", "34", "35")),
    "21768435": (8, ("12", "13", "14", "15", "23", "24", "25", "34", "35")),
}


@dataclass(frozen=True)
class PatternWitness:
    """A pattern together with the invariant index set realizing it in a host."""

    pattern: FpfInvolution
    indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"pattern": str(self.pattern), "indices": list(self.indices)}

    def __str__(self) -> str:
        return f"{self.pattern} at indices {','.join(str(i) for i in self.indices)}"


def standardize(values: tuple[int, ...]) -> tuple[int, ...]:
    """Replace the i-th smallest value by i.

    >>> standardize((4, 7, 1, 8, 2, 6))
    (3, 5, 1, 6, 2, 4)
    """
    order = {v: r for r, v in enumerate(sorted(values), start=1)}
    return tuple(order[v] for v in values)


def _standardized_restriction(host: FpfInvolution, indices: tuple[int, ...]) -> tuple[int, ...]:
    # On an invariant index set the values are the indices themselves, so the
    # ranking can be read off the sorted index tuple directly.
    order = {v: r for r, v in enumerate(indices, start=1)}
    return tuple(order[host.word[i - 1]] for i in indices)


def _invariant_index_sets(host: FpfInvolution, m: int) -> list[tuple[int, ...]]:
    """All unions of m arcs of the host, as sorted index tuples in lex order."""
    arcs = host.arcs()
    sets = [
        tuple(sorted(x for arc in combo for x in (arc.a, arc.d)))
        for combo in itertools.combinations(arcs, m)
    ]
    sets.sort()
    return sets


def includes_pattern(host: FpfInvolution, pattern: FpfInvolution) -> PatternWitness | None:
    """Search for an invariant occurrence of the pattern inside the host.

    Returns the witness with lexicographically least index set, or None.
    Index sets permuted by the host are exactly unions of its arcs, so the
    search runs over C(n, m) arc subsets rather than C(2n, 2m) index subsets.
    """
    if pattern.degree > host.degree:
        return None
    for idx in _invariant_index_sets(host, pattern.n):
        if _standardized_restriction(host, idx) == pattern.word:
            return PatternWitness(pattern, idx)
    return None


def bad_pattern_witness(host: FpfInvolution) -> PatternWitness | None:
    """Witness for the first obstruction pattern contained in the host, if any.

    Patterns are tried in the fixed listing order of ``BAD_PATTERNS``; the
    witness index set is the lexicographically least one for that pattern.
    """
    tables: dict[int, dict[tuple[int, ...], tuple[int, ...]]] = {}
    for pat in BAD_PATTERNS:
        if pat.degree > host.degree:
            continue
        table = tables.get(pat.n)
        if table is None:
            table = {}
            for idx in _invariant_index_sets(host, pat.n):
                table.setdefault(_standardized_restriction(host, idx), idx)
            tables[pat.n] = table
        idx = table.get(pat.word)
        if idx is not None:
            return PatternWitness(pat, idx)
    return None


def avoids_all_bad(host: FpfInvolution) -> bool:
    """True iff the host contains none of the 17 obstruction patterns."""
    return bad_pattern_witness(host) is None


def irregular_certificate(host: FpfInvolution, witness: PatternWitness) -> FpfInvolution:
    """Rewrite the witness positions so the restriction becomes decreasing.

    Position i_j receives the value at slot 2m+1-j of the witness index set,
    turning the restricted involution into the full reversal on those
    positions while leaving every other position untouched.  The result lies
    below the host in reverse order and is an irregular vertex of the graph
    on [result, host].
    """
    idx = witness.indices
    if len(idx) == 0 or len(idx) % 2 or list(idx) != sorted(set(idx)):
        raise InvolutionError(f"witness indices must be strictly increasing and even in number: {idx}")
    if idx[0] < 1 or idx[-1] > host.degree:
        raise InvolutionError(f"witness indices out of range 1..{host.degree}: {idx}")
    index_set = set(idx)
    if any(host.word[i - 1] not in index_set for i in idx):
        raise InvolutionError(f"indices {idx} are not permuted by {host}")
    if _standardized_restriction(host, idx) != witness.pattern.word:
        raise InvolutionError(f"indices {idx} of {host} do not realize pattern {witness.pattern}")
    w = list(host.word)
    k = len(idx)
    for j, pos in enumerate(idx):
        w[pos - 1] = idx[k - 1 - j]
    return FpfInvolution(tuple(w))
