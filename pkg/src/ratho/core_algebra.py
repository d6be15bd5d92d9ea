"""Free graded-commutative algebras over the exact rationals.

A generator set is an ordered list of named generators with non-negative
integer (cohomological) degrees.  A monomial is an exponent vector over
that fixed order; odd-degree generators never carry an exponent above 1.
A polynomial is a finite map from monomials to nonzero Fractions.

Sign convention: the product of two canonical monomials is the canonical
monomial of the merged exponents, times (-1)^k where k counts the pairs
of odd generators that must cross during the merge (odd generator i
active in the right factor, odd generator j > i active in the left one).
This realizes graded commutativity a*b = (-1)^{|a||b|} b*a.

No floating point anywhere: coefficients are fractions.Fraction.
"""

from fractions import Fraction
from collections import namedtuple

Generator = namedtuple("Generator", ["name", "degree"])


class GeneratorSetMismatch(ValueError):
    pass


class UnboundedSliceError(ValueError):
    pass


class DegreeError(ValueError):
    pass


class GeneratorSet:
    """Ordered generator context; declaration order is the canonical order."""

    def __init__(self, gens):
        gens = [Generator(str(n), int(d)) for (n, d) in gens]
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for g in gens:
            if g.degree < 0:
                raise ValueError("negative degree for generator %s" % g.name)
        self.gens = tuple(gens)
        self.names = tuple(names)
        self.degrees = tuple(g.degree for g in gens)
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.odd = tuple(d % 2 == 1 for d in self.degrees)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return "GeneratorSet(%s)" % (", ".join(
            "%s:%d" % (n, d) for n, d in zip(self.names, self.degrees)))

    def degree_of(self, name):
        return self.degrees[self.index[name]]

    # -- element builders ------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        unit = (0,) * len(self.gens)
        return Polynomial(self, {unit: c})

    def gen(self, name):
        if name not in self.index:
            raise KeyError("unknown generator %r" % name)
        exps = [0] * len(self.gens)
        exps[self.index[name]] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def monomial(self, powers, coeff=1):
        """Polynomial with a single term; powers maps name -> exponent."""
        exps = [0] * len(self.gens)
        for name, e in powers.items():
            exps[self.index[name]] = int(e)
        m = tuple(exps)
        self._check_monomial(m)
        c = Fraction(coeff)
        return Polynomial(self, {m: c} if c else {})

    def from_exponents(self, exps, coeff=1):
        m = tuple(int(e) for e in exps)
        self._check_monomial(m)
        c = Fraction(coeff)
        return Polynomial(self, {m: c} if c else {})

    def _check_monomial(self, exps):
        if len(exps) != len(self.gens):
            raise GeneratorSetMismatch("exponent vector length mismatch")
        for e, odd in zip(exps, self.odd):
            if e < 0:
                raise ValueError("negative exponent")
            if odd and e > 1:
                raise ValueError("odd generator squared")

    def monomial_degree(self, exps):
        return sum(e * d for e, d in zip(exps, self.degrees))

    def monomial_str(self, exps):
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e >= 2:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"


def normalize_product(gens, m1, m2):
    """Merge two canonical monomials; returns (sign, monomial) or None.

    None means the product vanishes because an odd generator repeats.
    """
    if len(m1) != len(gens.gens) or len(m2) != len(gens.gens):
        raise GeneratorSetMismatch("monomial over a different generator set")
    inv = 0
    left_odd = [j for j in range(len(m1)) if m1[j] and gens.odd[j]]
    for i in range(len(m2)):
        if m2[i] and gens.odd[i]:
            if m1[i]:
                return None
            # count odd factors of m1 that the incoming factor crosses
            inv += sum(1 for j in left_odd if j > i)
    merged = tuple(a + b for a, b in zip(m1, m2))
    return (-1 if inv % 2 else 1, merged)


class Polynomial:
    """Exact-rational linear combination of canonical monomials.

    Immutable by convention: no method mutates self, and the term dict is
    never handed out for writing.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens, terms):
        self.gens = gens
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- ring structure --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.gens, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self.__add__(self._coerce(other).__neg__())

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(self.gens,
                              {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                r = normalize_product(self.gens, m1, m2)
                if r is None:
                    continue
                sign, m = r
                s = out.get(m, Fraction(0)) + sign * c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.gens, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return self._coerce(other).__mul__(self)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.gens.one()
        for _ in range(int(k)):
            out = out * self
        return out

    def __truediv__(self, c):
        return self * (Fraction(1) / Fraction(c))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.gens != self.gens:
                raise GeneratorSetMismatch(
                    "polynomials over different generator sets")
            return other
        if isinstance(other, (int, Fraction)):
            return self.gens.constant(other)
        raise TypeError("cannot combine Polynomial with %r" % type(other))

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.gens.constant(other)
        return (isinstance(other, Polynomial) and self.gens == other.gens
                and self.terms == other.terms)

    __hash__ = None

    def homogeneous_parts(self):
        """Map degree -> homogeneous Polynomial, no zero entries."""
        parts = {}
        for m, c in self.terms.items():
            d = self.gens.monomial_degree(m)
            parts.setdefault(d, {})[m] = c
        return {d: Polynomial(self.gens, t) for d, t in sorted(parts.items())}

    def is_homogeneous(self):
        return len({self.gens.monomial_degree(m) for m in self.terms}) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial; None for zero."""
        ds = {self.gens.monomial_degree(m) for m in self.terms}
        if not ds:
            return None
        if len(ds) > 1:
            raise DegreeError("inhomogeneous polynomial has no degree")
        return ds.pop()

    def coefficient(self, other):
        """Coefficient of the single monomial of other inside self."""
        (m,) = other.terms.keys()
        return self.terms.get(m, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc:
                      (self.gens.monomial_degree(mc[0]), mc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.gens.monomial_str(m)
            if ms == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = ms
            else:
                body = "%s*%s" % (abs(c), ms)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "<Polynomial %s>" % self


def poly_mul(p, q):
    """Product of two polynomials (same as p * q)."""
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise TypeError("poly_mul wants two Polynomials")
    return p * q


def basis_of_degree(gens, n, polybound=None):
    """All canonical monomials of total degree n, as exponent tuples.

    Deterministic order: lexicographic in the exponent vector.  polybound
    caps the total exponent of degree-0 generators; it is required as soon
    as any degree-0 generator is present, since the slice is infinite
    otherwise.
    """
    if n < 0:
        return []
    has_zero = any(d == 0 for d in gens.degrees)
    if has_zero and polybound is None:
        raise UnboundedSliceError(
            "unbounded slice: degree-0 generators need a polybound")
    out = []
    k = len(gens.gens)

    def rec(i, remaining, zbudget, prefix):
        if i == k:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        d = gens.degrees[i]
        if d == 0:
            emax = zbudget
        elif gens.odd[i]:
            emax = min(1, remaining // d)
        else:
            emax = remaining // d
        for e in range(emax + 1):
            prefix.append(e)
            rec(i + 1, remaining - e * d,
                zbudget - (e if d == 0 else 0), prefix)
            prefix.pop()

    rec(0, n, polybound if has_zero else 0, [])
    return out


class AlgebraMorphism:
    """Degree-preserving generator assignment between two algebras.

    source and target may be GeneratorSets or anything exposing .gens
    (e.g. a DGCA).  Every source generator must be assigned a polynomial
    over the target that is homogeneous of the generator's degree, or zero.
    """

    def __init__(self, source, target, assignment):
        self.source = source
        self.target = target
        sgens = gens_of(source)
        tgens = gens_of(target)
        self.assignment = {}
        for name in sgens.names:
            if name not in assignment:
                raise ValueError("morphism misses generator %r" % name)
            p = assignment[name]
            if not isinstance(p, Polynomial) or p.gens != tgens:
                raise GeneratorSetMismatch(
                    "image of %r is not over the target algebra" % name)
            if not p.is_zero() and p.degree() != sgens.degree_of(name):
                raise DegreeError(
                    "image of %r is not homogeneous of degree %d"
                    % (name, sgens.degree_of(name)))
            self.assignment[name] = p
        extra = set(assignment) - set(sgens.names)
        if extra:
            raise ValueError("assignment for unknown generators %s"
                             % sorted(extra))

    def __call__(self, p):
        return apply_morphism(self, p)

    def __eq__(self, other):
        return (isinstance(other, AlgebraMorphism)
                and gens_of(self.source) == gens_of(other.source)
                and gens_of(self.target) == gens_of(other.target)
                and self.assignment == other.assignment)

    __hash__ = None


def gens_of(obj):
    """The GeneratorSet of a GeneratorSet, DGCA, or similar."""
    if isinstance(obj, GeneratorSet):
        return obj
    return obj.gens


def apply_morphism(phi, p):
    """Multiplicative unital extension of the generator assignment."""
    sgens = gens_of(phi.source)
    tgens = gens_of(phi.target)
    if p.gens != sgens:
        raise GeneratorSetMismatch("polynomial not over the morphism source")
    out = tgens.zero()
    for m, c in p.terms.items():
        img = tgens.constant(c)
        # factors in canonical order; Koszul signs handled by the product
        for i, e in enumerate(m):
            if e == 0:
                continue
            g = phi.assignment[sgens.names[i]]
            for _ in range(e):
                img = img * g
            if img.is_zero():
                break
        out = out + img
    return out


def identity_morphism(alg):
    gens = gens_of(alg)
    return AlgebraMorphism(alg, alg, {n: gens.gen(n) for n in gens.names})


def morphism_by_names(source, target, overrides=None):
    """Morphism sending each generator to the same-named target generator.

    overrides maps selected source generator names to explicit images.
    """
    sgens = gens_of(source)
    tgens = gens_of(target)
    overrides = overrides or {}
    assignment = {}
    for name in sgens.names:
        if name in overrides:
            assignment[name] = overrides[name]
        else:
            if name not in tgens.index:
                raise ValueError("target has no generator %r" % name)
            assignment[name] = tgens.gen(name)
    return AlgebraMorphism(source, target, assignment)


def compose_morphisms(outer, inner):
    """outer after inner, defined when inner's target is outer's source."""
    if gens_of(inner.target) != gens_of(outer.source):
        raise GeneratorSetMismatch("morphisms do not compose")
    assignment = {name: apply_morphism(outer, img)
                  for name, img in inner.assignment.items()}
    return AlgebraMorphism(inner.source, outer.target, assignment)
