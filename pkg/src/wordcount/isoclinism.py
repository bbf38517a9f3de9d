"""Bounded search for n-isoclinisms and the solution-count scaling law.

An n-isoclinism between G and H is a pair of isomorphisms
phi: G/Z_n(G) -> H/Z_n(H) and psi: gamma_{n+1}(G) -> gamma_{n+1}(H) that are
compatible: psi sends the left-normed commutator of any (n+1)-tuple of coset
representatives in G to the commutator of the phi-images' representatives
in H.  When a witness exists the fiber counts of the (n+1)-fold commutator
word scale by (|G|/|H|)^(n+1) along psi.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import chartab, formulas, groups
from .errors import SearchBoundExceeded, WitnessInvalid

SEARCH_BOUND = 64


@dataclass
class IsoclinismWitness:
    n: int
    G: groups.GroupTable
    H: groups.GroupTable
    phi: tuple   # quotient_G index -> quotient_H index
    psi: dict    # gamma_{n+1}(G) element -> gamma_{n+1}(H) element
    quotient_G: groups.GroupTable
    quotient_H: groups.GroupTable
    proj_G: tuple
    proj_H: tuple


def _coset_reps(Q, proj, order):
    reps = [None] * Q.order
    for g in range(order):
        q = proj[g]
        if reps[q] is None:
            reps[q] = g
    return reps


def _left_normed(G, elements):
    acc = elements[0]
    for g in elements[1:]:
        acc = G.commutator(acc, g)
    return acc


def _close_partial(partial, A, B):
    """Extend a generator assignment to the generated subgroup.

    Returns the closed map or None on a homomorphism/injectivity conflict.
    """
    mapping = dict(partial)
    image = set(mapping.values())
    if len(image) != len(mapping):
        return None
    frontier = list(mapping)
    while frontier:
        nxt = []
        for a in list(mapping):
            for b in frontier:
                for c, fc in ((A.mul[a][b], B.mul[mapping[a]][mapping[b]]),
                              (A.mul[b][a], B.mul[mapping[b]][mapping[a]])):
                    if c in mapping:
                        if mapping[c] != fc:
                            return None
                    else:
                        if fc in image:
                            return None
                        mapping[c] = fc
                        image.add(fc)
                        nxt.append(c)
        frontier = nxt
    return mapping


def _isomorphisms(A, B):
    """Yield all isomorphisms A -> B as index tuples."""
    if A.order != B.order:
        return
    orders_B = [B.element_order(h) for h in range(B.order)]
    gens = sorted(A.generating_set(), key=lambda g: (A.element_order(g), g))

    def backtrack(i, partial):
        if i == len(gens):
            if len(partial) == A.order:
                yield tuple(partial[a] for a in range(A.order))
            return
        g = gens[i]
        if g in partial:
            yield from backtrack(i + 1, partial)
            return
        og = A.element_order(g)
        for h in sorted(range(B.order), key=lambda h: (orders_B[h], h)):
            if orders_B[h] != og:
                continue
            closed = _close_partial({**partial, g: h}, A, B)
            if closed is not None:
                yield from backtrack(i + 1, closed)

    yield from backtrack(0, {0: 0})


def find_isoclinism(G, H, n):
    """An n-isoclinism witness, or None if the groups are not n-isoclinic."""
    ZG, ZH = groups.zn(G, n), groups.zn(H, n)
    gammaG, gammaH = groups.gamma(G, n + 1), groups.gamma(H, n + 1)
    if G.order // ZG.order > SEARCH_BOUND or gammaG.order > SEARCH_BOUND:
        raise SearchBoundExceeded(
            f"quotient or commutator subgroup exceeds {SEARCH_BOUND}")
    if H.order // ZH.order > SEARCH_BOUND or gammaH.order > SEARCH_BOUND:
        raise SearchBoundExceeded(
            f"quotient or commutator subgroup exceeds {SEARCH_BOUND}")
    if G.order // ZG.order != H.order // ZH.order or \
            gammaG.order != gammaH.order:
        return None
    QG, projG = groups.quotient(G, ZG)
    QH, projH = groups.quotient(H, ZH)
    repsG = _coset_reps(QG, projG, G.order)
    repsH = _coset_reps(QH, projH, H.order)


    tuples = list(itertools.product(range(QG.order), repeat=n + 1))
    for phi in _isomorphisms(QG, QH):
        psi = {0: 0}
        ok = True
        for t in tuples:
            a = _left_normed(G, [repsG[q] for q in t])
            b = _left_normed(H, [repsH[phi[q]] for q in t])
            if psi.setdefault(a, b) != b:
                ok = False
                break
        if not ok:
            continue
        psi = _close_partial(psi, G, H)
        if psi is None or len(psi) != gammaG.order:
            continue
        if set(psi) != set(gammaG.members) or \
                set(psi.values()) != set(gammaH.members):
            continue
        witness = IsoclinismWitness(n, G, H, phi, psi, QG, QH, projG, projH)
        verify_witness(witness)
        return witness
    return None


def verify_witness(w):
    """Independently re-check all three conditions of the definition."""
    G, H, n = w.G, w.H, w.n
    ZG, ZH = groups.zn(G, n), groups.zn(H, n)
    gammaG, gammaH = groups.gamma(G, n + 1), groups.gamma(H, n + 1)
    QG, projG = groups.quotient(G, ZG)
    QH, projH = groups.quotient(H, ZH)
    if QG.mul != w.quotient_G.mul or QH.mul != w.quotient_H.mul:
        raise WitnessInvalid("witness quotients do not match the groups")
    phi, psi = w.phi, w.psi
    if sorted(phi) != list(range(QH.order)):
        raise WitnessInvalid("phi is not a bijection")
    for a in range(QG.order):
        for b in range(QG.order):
            if phi[QG.mul[a][b]] != QH.mul[phi[a]][phi[b]]:
                raise WitnessInvalid("phi is not a homomorphism")
    if set(psi) != set(gammaG.members) or \
            set(psi.values()) != set(gammaH.members) or \
            len(set(psi.values())) != len(psi):
        raise WitnessInvalid("psi is not a bijection of the commutator terms")
    for a in gammaG.members:
        for b in gammaG.members:
            if psi[G.mul[a][b]] != H.mul[psi[a]][psi[b]]:
                raise WitnessInvalid("psi is not a homomorphism")
    repsG = _coset_reps(QG, projG, G.order)
    repsH = _coset_reps(QH, projH, H.order)

    for t in itertools.product(range(QG.order), repeat=n + 1):
        a = _left_normed(G, [repsG[q] for q in t])
        b = _left_normed(H, [repsH[phi[q]] for q in t])
        if psi[a] != b:
            raise WitnessInvalid("psi is not compatible with phi")


def verify_scaling(witness, table_G=None, table_H=None):
    """Check zeta_G = (|G|/|H|)^(n+1) * zeta_H o psi on gamma_{n+1}(G).

    The scaling statement names phi, but the commutator-subgroup map psi is
    the one that applies (and the one the proof uses).
    """
    verify_witness(witness)
    G, H, n = witness.G, witness.H, witness.n
    if table_G is None:
        table_G = chartab.character_table(G)
    if table_H is None:
        table_H = chartab.character_table(H)
    zeta_G = formulas.zeta_wn_char(G, table_G, n + 1)
    zeta_H = formulas.zeta_wn_char(H, table_H, n + 1)
    factor = Fraction(G.order, H.order) ** (n + 1)
    checked = []
    for g, h in sorted(witness.psi.items()):
        lhs = Fraction(zeta_G.at_element(g))
        rhs = factor * zeta_H.at_element(h)
        if lhs != rhs:
            raise WitnessInvalid(
                f"scaling fails at {G.label(g)}: {lhs} != {rhs}")
        checked.append((g, h, lhs))
    return {"factor": factor, "checked": checked}
