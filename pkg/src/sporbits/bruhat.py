"""Reverse Bruhat order on fixed-point-free involutions.

The closure order on orbits is the reverse of ordinary Bruhat order: the
reversal w0 = 2n...1 sits at the bottom (the closed orbit) and 2143...
at the top (the open orbit).  Comparison is by prefix dominance: mu <= pi
in reverse order iff for every prefix length i the increasing rearrangement
of pi_1..pi_i is entrywise <= that of mu_1..mu_i.

Rank generating polynomials of lower intervals are computed by brute
histogram; for involutions avoiding the 17 obstruction patterns the same
polynomial also factors into brackets 1 + q + ... + q^t via an independent
peeling recursion, which `factor_rank_poly` implements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .involutions import (
    DEFAULT_MAX_DEGREE,
    FpfInvolution,
    InvolutionError,
    Transposition,
    delete_pair_standardize,
    enumerate_fpf,
    rank,
)
from .patterns import PatternWitness, bad_pattern_witness


class PatternObstruction(ValueError):
    """The bracket factorization only applies to obstruction-free involutions."""

    def __init__(self, witness: PatternWitness):
        self.witness = witness
        super().__init__(f"contains bad pattern {witness}")


@dataclass(frozen=True)
class RankPolynomial:
    """Coefficients of a rank generating function, lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if not c or c[0] != 1 or c[-1] != 1 or any(x < 0 for x in c):
            raise ValueError(f"not a valid rank polynomial: {c}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def pretty(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                q = "q" if i == 1 else f"q^{i}"
                terms.append(q if c == 1 else f"{c}{q}")
        return " + ".join(terms)


@dataclass(frozen=True, eq=False)
class Interval:
    """A lower interval {mu : mu <= top} in reverse order, with ranks attached."""

    top: FpfInvolution
    members: tuple[FpfInvolution, ...]
    rank_of: Mapping[FpfInvolution, int]


@lru_cache(maxsize=1 << 18)
def _sorted_prefixes(word: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(word[:i])) for i in range(1, len(word)))


def reverse_leq(mu: FpfInvolution, pi: FpfInvolution) -> bool:
    """True iff mu <= pi in reverse order, i.e. the mu-orbit lies in the closure
    of the pi-orbit.

    >>> from .involutions import parse_involution as p
    >>> reverse_leq(p("4321"), p("3412")), reverse_leq(p("2143"), p("4321"))
    (True, False)
    """
    if mu.degree != pi.degree:
        raise InvolutionError(f"degree mismatch: {mu.degree} vs {pi.degree}")
    if mu.word == pi.word:
        return True
    for pref_pi, pref_mu in zip(_sorted_prefixes(pi.word), _sorted_prefixes(mu.word)):
        for x, y in zip(pref_pi, pref_mu):
            if x > y:
                return False
    return True


def interval(pi: FpfInvolution, max_degree: int = DEFAULT_MAX_DEGREE) -> Interval:
    """All involutions below pi in reverse order, in lexicographic word order."""
    members = tuple(mu for mu in enumerate_fpf(pi.n, max_degree) if reverse_leq(mu, pi))
    return Interval(pi, members, {mu: rank(mu) for mu in members})


def rank_poly(pi: FpfInvolution, max_degree: int = DEFAULT_MAX_DEGREE) -> RankPolynomial:
    """Histogram of ranks over the lower interval of pi."""
    iv = interval(pi, max_degree)
    top_rank = rank(pi)
    counts = [0] * (top_rank + 1)
    for mu in iv.members:
        r = iv.rank_of[mu]
        if r > top_rank:
            raise AssertionError(f"rank monotonicity violated: {mu} has rank {r} inside interval of {pi}")
        counts[r] += 1
    return RankPolynomial(tuple(counts))


def is_palindromic(poly: RankPolynomial | Sequence[int]) -> bool:
    """True iff the coefficient sequence reads the same reversed."""
    coeffs = tuple(poly.coeffs if isinstance(poly, RankPolynomial) else poly)
    if not coeffs:
        raise ValueError("empty coefficient sequence")
    return coeffs == coeffs[::-1]


def is_rationally_smooth(pi: FpfInvolution, max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """True iff the closure of the pi-orbit is rationally smooth (palindromic test)."""
    return is_palindromic(rank_poly(pi, max_degree))


def factor_rank_poly(pi: FpfInvolution) -> tuple[int, ...]:
    """Bracket exponents (t_1, ..., t_n) with P_pi = prod_i (1 + q + ... + q^{t_i}).

    Peeling step: with 2n letters, if 2n - pi_1 <= pi_2n - 1 (the value 1 is
    at least as close to the right end as 2n is to the left end), emit
    t = 2n - pi_1 and delete the arc (1, pi_1); otherwise emit t = pi_2n - 1
    and delete the arc (pi_2n, 2n).  Refuses involutions containing an
    obstruction pattern, for which no such factorization is guaranteed.

    >>> from .involutions import parse_involution as p
    >>> factor_rank_poly(p("2143"))
    (2, 0)
    """
    witness = bad_pattern_witness(pi)
    if witness is not None:
        raise PatternObstruction(witness)
    exps: list[int] = []
    cur = pi
    while True:
        two_n = cur.degree
        first, last = cur.word[0], cur.word[-1]
        if two_n - first <= last - 1:
            exps.append(two_n - first)
            arc = Transposition(1, first)
        else:
            exps.append(last - 1)
            arc = Transposition(last, two_n)
        if cur.n == 1:
            break
        cur = delete_pair_standardize(cur, arc)
    return tuple(exps)


def bracket_product(exponents: Sequence[int]) -> RankPolynomial:
    """Expand prod_i (1 + q + ... + q^{t_i}) into a coefficient sequence."""
    coeffs = [1]
    for t in exponents:
        if t < 0:
            raise ValueError(f"bracket exponent must be nonnegative, got {t}")
        out = [0] * (len(coeffs) + t)
        for i, c in enumerate(coeffs):
            for k in range(t + 1):
                out[i + k] += c
        coeffs = out
    return RankPolynomial(tuple(coeffs))
