"""Degreewise construction of minimal Sullivan models; relative extensions.

The absolute construction assumes cohomological 1-connectedness (H^0 = Q,
H^1 = 0) and proceeds degree by degree: in degree n it first adjoins closed
generators surjecting onto the cokernel of H^n(M) -> H^n(A), then generators
whose differentials span the kernel of H^{n+1}(M) -> H^{n+1}(A), with
comparison values chosen as explicit cocycle and primitive witnesses.  All
representative choices come from the deterministic echelon order, so reruns
reproduce the same presentation; generator counts per degree are the only
isomorphism invariant asserted.

Relative Sullivan extensions are verified, never constructed.  Relative
minimality is the strict condition: no differential of a new generator may
contain a term that is a single new generator with no base factor.
"""

from fractions import Fraction

from . import _linalg
from .core_algebra import (
    AlgebraMorphism,
    GeneratorSet,
    Polynomial,
    apply_morphism,
    compose_morphisms,
    morphism_by_names,
)
from .dgca import (
    DGCA,
    ChainMapError,
    _slice_cohomology,
    apply_d,
    cohomology,
    is_chain_map,
    is_exact,
    is_quasi_iso,
)
from .linfty import SullivanCertificate, _cycle_witness, _dependencies


class BudgetExceeded(RuntimeError):
    pass


class MinimalModelResult:
    """Minimal model M, comparison map into A, certified bound, counts per degree."""

    def __init__(self, model, comparison, bound, counts):
        self.model = model
        self.comparison = comparison
        self.bound = bound
        self.counts = counts

    def __repr__(self):
        return "MinimalModelResult(bound=%d, counts=%r)" % (self.bound, self.counts)


def _embed(p, gens):
    # re-express a polynomial over a prefix generator set in the grown one
    pad = len(gens) - (len(next(iter(p.terms))) if p.terms else len(gens))
    if not p.terms:
        return Polynomial(gens, {})
    return Polynomial(gens, {m + (0,) * pad: c for m, c in p.terms.items()})


def minimal_model(A, N, polybound=None, budget=64, reverse=False):
    """Minimal Sullivan model of A through degree N with comparison map.

    reverse flips the deterministic order in which representative classes
    are consumed; the resulting presentation may differ but generator counts
    may not.  budget caps the total number of adjoined generators.
    """
    if N < 1:
        raise ValueError("degree bound must be >= 1")
    low = cohomology(A, (0, 1), polybound)
    if low[0].dim != 1:
        raise ValueError("H^0 must be one-dimensional")
    if low[1].dim != 0:
        raise ValueError("H^1 must vanish")

    pairs = []
    d_data = {}
    phi_data = {}

    def build():
        gens = GeneratorSet(pairs)
        M = DGCA(gens, {n: _embed(p, gens) for n, p in d_data.items()})
        phi = AlgebraMorphism(M, A, dict(phi_data))
        return M, phi

    M, phi = build()
    for n in range(2, N + 1):
        slA, kerA, bndA, repsA = _slice_cohomology(A, n, polybound)
        ech = _linalg.Echelon(len(slA.basis))
        for v in bndA:
            ech.add(v)
        slM, _, _, repsM = _slice_cohomology(M, n, None)
        for v in repsM:
            ech.add(slA.vector(apply_morphism(phi, slM.poly(v))))
        counter = 0
        cands = list(repsA)
        if reverse:
            cands.reverse()
        for v in cands:
            if not any(x != 0 for x in ech.add(v)):
                continue
            name = "v%d_%d" % (n, counter)
            counter += 1
            pairs.append((name, n))
            if len(pairs) > budget:
                raise BudgetExceeded("generator budget %d exceeded" % budget)
            d_data[name] = Polynomial(GeneratorSet(pairs), {})
            phi_data[name] = slA.poly(v)
        M, phi = build()

        # differentials spanning ker(H^{n+1}(M) -> H^{n+1}(A))
        slM1, _, _, repsM1 = _slice_cohomology(M, n + 1, None)
        slA1, _, bndA1, _ = _slice_cohomology(A, n + 1, polybound)
        echA1 = _linalg.Echelon(len(slA1.basis))
        for v in bndA1:
            echA1.add(v)
        resid = [echA1.reduce(slA1.vector(apply_morphism(phi, slM1.poly(v))))
                 for v in repsM1]
        if resid:
            mat = [[resid[i][r] for i in range(len(resid))]
                   for r in range(len(slA1.basis))]
            combos = _linalg.nullspace(mat, len(resid))
        else:
            combos = []
        if reverse:
            combos.reverse()
        for cvec in combos:
            zv = [Fraction(0)] * len(slM1.basis)
            for c, rep in zip(cvec, repsM1):
                if c:
                    zv = [a + c * b for a, b in zip(zv, rep)]
            z = slM1.poly(zv)
            q = is_exact(A, apply_morphism(phi, z), polybound)
            if q is None:
                raise RuntimeError(
                    "no primitive witness within the polynomial-degree budget")
            name = "v%d_%d" % (n, counter)
            counter += 1
            pairs.append((name, n))
            if len(pairs) > budget:
                raise BudgetExceeded("generator budget %d exceeded" % budget)
            d_data[name] = z
            phi_data[name] = q
        M, phi = build()

    counts = {}
    for _, deg in pairs:
        counts[deg] = counts.get(deg, 0) + 1
    return MinimalModelResult(M, phi, N, dict(sorted(counts.items())))


class RelativeExtension:
    """Base algebra sitting generator-wise inside a total algebra.

    The constructor checks containment, degree agreement, and that the total
    differential restricts to the base one; the Sullivan and minimality
    conditions on the new generators are the business of verify_relative.
    """

    def __init__(self, base, total):
        self.base = base
        self.total = total
        for name, deg in zip(base.gens.names, base.gens.degrees):
            if name not in total.gens.index:
                raise ValueError("base generator %r missing from total" % name)
            if total.gens.degree_of(name) != deg:
                raise ValueError("degree mismatch on base generator %r" % name)
        self.inclusion = morphism_by_names(base, total)
        ok, failures = is_chain_map(self.inclusion)
        if not ok:
            raise ChainMapError(
                "total differential does not restrict to the base on %r"
                % failures[0][0], failures[0][0])
        self.new_names = tuple(n for n in total.gens.names
                               if n not in base.gens.index)

    def __repr__(self):
        return "RelativeExtension(base=%r, new=%r)" % (
            self.base.gens.names, self.new_names)


class RelativeReport:
    """Per-leg outcome of relative-extension verification."""

    def __init__(self, sullivan, minimal_offenders, quasi_ok, quasi_detail):
        self.sullivan = sullivan
        self.minimal_offenders = list(minimal_offenders)
        self.quasi_ok = quasi_ok
        self.quasi_detail = quasi_detail

    @property
    def minimal(self):
        return not self.minimal_offenders

    @property
    def passed(self):
        return self.sullivan.ok and self.minimal and self.quasi_ok

    def __repr__(self):
        return ("RelativeReport(sullivan=%r, minimal=%r, quasi_iso=%r)"
                % (self.sullivan.ok, self.minimal, self.quasi_ok))


def _relative_sullivan(ext):
    deps = _dependencies(ext.total)
    new = list(ext.new_names)
    restricted = {g: {h for h in deps[g] if h in ext.new_names} for g in new}
    placed = set()
    order = []
    while len(order) < len(new):
        ready = [g for g in new if g not in placed and restricted[g] <= placed]
        if not ready:
            return SullivanCertificate(cycle=_cycle_witness(new, restricted))
        order.append(ready[0])
        placed.add(ready[0])
    return SullivanCertificate(order=order)


def _minimality_offenders(ext):
    gens = ext.total.gens
    base = set(ext.base.gens.names)
    offenders = []
    for g in ext.new_names:
        for m in ext.total.d[g].terms:
            newlen = baselen = 0
            for i, e in enumerate(m):
                if gens.names[i] in base:
                    baselen += e
                else:
                    newlen += e
            if baselen == 0 and newlen == 1:
                offenders.append(g)
                break
    return offenders


def verify_relative(ext, target, N, base_map=None, polybound=None):
    """Certify a relative Sullivan extension against a comparison map.

    Legs: (i) the new generators admit an order relative to the base,
    (ii) strict relative minimality (no bare linear new-generator term),
    (iii) target is a quasi-isomorphism through degree N.  Precondition
    failures (target not a chain map, triangle over the base not commuting)
    raise; leg failures are reported with witnesses.
    """
    ok, failures = is_chain_map(target)
    if not ok:
        raise ChainMapError("target is not a chain map on %r" % failures[0][0],
                            failures[0][0])
    if base_map is not None:
        if compose_morphisms(target, ext.inclusion) != base_map:
            raise ChainMapError("triangle over the base does not commute")
    cert = _relative_sullivan(ext)
    offenders = _minimality_offenders(ext)
    quasi_ok, detail = is_quasi_iso(target, (0, N), polybound=polybound)
    return RelativeReport(cert, offenders, quasi_ok, detail)


def cofiber(ext):
    """Quotient of the total algebra by the base: keep new generators, zero the rest."""
    gens = ext.total.gens
    keep = [i for i, n in enumerate(gens.names) if n in ext.new_names]
    new_pairs = [(gens.names[i], gens.degrees[i]) for i in keep]
    new_gens = GeneratorSet(new_pairs)
    d = {}
    for g in ext.new_names:
        out = Polynomial(new_gens, {})
        for m, c in ext.total.d[g].terms.items():
            if any(m[i] for i in range(len(m)) if i not in keep):
                continue
            out = out + new_gens.from_exponents(tuple(m[i] for i in keep), c)
        d[g] = out
    return DGCA(new_gens, d)
