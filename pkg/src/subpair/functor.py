"""From pairs to poset representations and back.

``F(B; A)`` lives on the ``F_p``-space ``A+/A-`` with ``A- = pA`` and
``A+ = A + soc B``; a submodule ``C`` of ``B`` contributes the subspace
``((C & A+) + A-)/A-``.  The reverse direction rebuilds pairs from
subspaces (pull-back along ``A+ -> A+/A-``) and lifts maps of
representations to maps of pairs through picket decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import fp
from . import posetrep as pr
from .homs import PairMorphism, inclusions, morphism_from_images
from .module import (
    LambdaModule,
    Submodule,
    howell,
    reduce_by,
    _pivot,
    left_zero_rows,
    solve_system,
    vec_add,
    vec_scale,
)
from .pairs import DecompReport, Label, Pair, labels_direct_sum
from .posetrep import PosetRep, RepLabel


class FunctorError(ValueError):
    pass


def _lincomb(spec, coeffs, vecs, width):
    acc = (0,) * width
    for c, v in zip(coeffs, vecs):
        if c:
            acc = vec_add(spec, acc, vec_scale(spec, c, v))
    return acc


class Frame:
    """Coordinates on ``A+/A-`` for a module ``B`` and a submodule ``A+``.

    ``A-`` is taken to be ``p A+``.  The basis consists of some of the
    Howell rows of ``A+``; :meth:`coords` sends an element of ``A+`` to its
    coordinate vector in ``F_p^dim``.
    """

    def __init__(self, B: LambdaModule, a_plus: Submodule):
        if not a_plus.scalar_image(2).is_zero():
            raise FunctorError("p^2 A+ != 0")
        self.B = B
        self.spec = spec = B.spec
        self.a_plus = a_plus
        self.a_minus = a_plus.scalar_image(1)
        p, r = spec.p, B.rank
        gens = list(a_plus.rows)
        J = len(gens)
        self._J = J
        rows = []
        for j, g in enumerate(gens):
            e = [0] * J
            e[j] = 1
            rows.append(tuple(g) + tuple(e))
        for a in self.a_minus.rows:
            rows.append(tuple(a) + (0,) * J)
        reduced = howell(spec, rows, r + J)
        self._left = [(row, _pivot(spec, row)) for row in reduced if _pivot(spec, row)[0] < r]
        # classes of coefficient vectors that land in A-
        kernel = [tuple(x % p for x in row[r:]) for row in reduced if _pivot(spec, row)[0] >= r]
        self._kernel = fp.rref(kernel, J, p)
        kpiv = set(fp.pivots(self._kernel))
        self._free = [j for j in range(J) if j not in kpiv]
        self.basis = tuple(gens[j] for j in self._free)
        self.dim = len(self._free)

    def coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        spec, r, p = self.spec, self.B.rank, self.spec.p
        target = tuple(vec) + (0,) * self._J
        res, _ = reduce_by(spec, [row for row, _ in self._left], [pv for _, pv in self._left], target)
        if any(res[:r]):
            raise FunctorError("element is not in A+")
        alpha = [(-x) % p for x in res[r:]]
        alpha = fp.reduce(self._kernel, alpha, p)
        return tuple(alpha[j] for j in self._free)

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        """A representative in ``A+`` of the class with these coordinates."""
        return _lincomb(self.spec, coords, self.basis, self.B.rank)

    def subspace(self, C: Submodule) -> fp.Space:
        meet = C.intersect(self.a_plus)
        return fp.rref([self.coords(g) for g in meet.rows], self.dim, self.spec.p)


@dataclass(frozen=True)
class TildeSpace:
    """The subspace ``((C & A+) + A-)/A-`` of ``A+/A-``."""

    frame: Frame
    space: fp.Space

    @property
    def dim(self) -> int:
        return len(self.space)

    @property
    def basis(self) -> list[tuple[int, ...]]:
        """Representatives in ``B`` (embedded vectors) of a basis of the subspace."""
        return [self.frame.lift(v) for v in self.space]

    def coords(self, vec) -> tuple[int, ...]:
        return self.frame.coords(vec)

    def __le__(self, other: "TildeSpace") -> bool:
        return fp.is_subspace(self.space, other.space, self.frame.spec.p)

    def __and__(self, other: "TildeSpace") -> "TildeSpace":
        return TildeSpace(self.frame, fp.intersect(self.space, other.space, self.frame.dim, self.frame.spec.p))

    def __add__(self, other: "TildeSpace") -> "TildeSpace":
        return TildeSpace(self.frame, fp.add(self.space, other.space, self.frame.dim, self.frame.spec.p))


def frame(x: Pair) -> Frame:
    fr = x.__dict__.get("_frame")
    if fr is None:
        fr = Frame(x.B, x.a_plus)
        object.__setattr__(x, "_frame", fr)
    return fr


def tilde(x: Pair, C: Submodule) -> TildeSpace:
    if C.module != x.B:
        raise FunctorError("C is not a submodule of B")
    fr = frame(x)
    return TildeSpace(fr, fr.subspace(C))


def apply_F(x: Pair) -> PosetRep:
    fr = frame(x)
    B = x.B
    n = x.spec.n
    chain = tuple(fr.subspace(B.radical_power(ell)) for ell in range(1, n))
    return PosetRep(x.spec.p, n, fr.dim, chain, fr.subspace(B.socle), fr.subspace(x.A))


def apply_F_morphism(f: PairMorphism) -> list[list[int]]:
    """Matrix (``dim F(y) x dim F(x)``) of the induced map on ``A+/A-``."""
    fx, fy = frame(f.source), frame(f.target)
    cols = [fy.coords(f.apply_embedded(b)) for b in fx.basis]
    return [[cols[j][i] for j in range(fx.dim)] for i in range(fy.dim)]


# -- the correspondence table ----------------------------------------------------------


def label_to_pair(rl: RepLabel, n: int) -> Label:
    rl.validate(n)
    if rl.kind == "V":
        ell, lp, lpp = rl.a, rl.b, rl.c
        if lp == 1 and lpp == 0:
            return Label.P(0, ell + 1)
        if lp == 1 and lpp == 1:
            return Label.P(1, ell + 1)
        if lp == 0 and lpp == 1 and ell <= n - 2:
            return Label.P(2, ell + 2)
    elif rl.b <= n - 2:
        return Label.Q(rl.a + 1, rl.b + 2)
    raise FunctorError(f"{rl} violates the image conditions for n={n}")


def pair_to_label(label: Label) -> RepLabel:
    """The representation label ``F`` sends ``label`` to."""
    if label.kind == "Q":
        return RepLabel.W(label.a - 1, label.b - 2)
    m, ell = label.a, label.b
    if m == 0:
        return RepLabel.V(ell - 1, 1, 0)
    if m == 1:
        return RepLabel.V(ell - 1, 1, 1)
    return RepLabel.V(ell - 2, 0, 1)


def classify_s2(x: Pair, witness: bool = False) -> DecompReport:
    """Indecomposable summands of ``x``, optionally with a verified isomorphism."""
    if not x.A.scalar_image(2).is_zero():
        raise FunctorError("p^2 A != 0")
    n = x.spec.n
    mult = pr.multiplicities(apply_F(x))
    labels = []
    for rl, k in sorted(mult.items()):
        labels += [label_to_pair(rl, n)] * k
    report = DecompReport.from_labels(labels)
    if report.partition != x.B.partition:
        raise ArithmeticError(f"labels {report} do not add up to partition {x.B.partition}")
    if report.a_length != x.A.length:
        raise ArithmeticError(f"labels {report} do not add up to length(A) = {x.A.length}")
    if witness:
        return DecompReport(report.labels, iso_witness(x, report))
    return report


# -- constructive direction ------------------------------------------------------


def pullback_pair(B: LambdaModule, a_plus: Submodule, U: Sequence[Sequence[int]]) -> Pair:
    """The pair ``(B; A)`` with ``pA+ <= A <= A+`` and ``A/pA+ = U``."""
    if not B.socle <= a_plus:
        raise FunctorError("soc B is not contained in A+")
    fr = Frame(B, a_plus)
    p = B.spec.p
    for u in U:
        if len(u) != fr.dim:
            raise FunctorError(f"vector {tuple(u)} has the wrong length for a {fr.dim}-dimensional space")
    space = fp.rref(U, fr.dim, p)
    A = Submodule.span(B, list(fr.a_minus.rows) + [fr.lift(u) for u in space])
    return Pair(B, A)


def _loewy_length(U: Submodule) -> int:
    k = 0
    while not U.scalar_image(k).is_zero():
        k += 1
    return k


def _complement(spec, U: Submodule, b, kill, ell: int) -> Submodule:
    """``{u in U : z.u = 0}`` for a functional ``z`` with ``z.b = p^(n-ell)`` and ``z.kill = 0``."""
    n, r = spec.n, U.module.rank
    eqs = [tuple(b)] + [tuple(v) for v in kill]
    gens = [tuple(e[i] for e in eqs) for i in range(r)]
    rhs = (spec.mul_p(1, n - ell),) + (0,) * len(kill)
    sol = solve_system(spec, gens, rhs)
    if not sol.consistent:
        raise ArithmeticError("no splitting functional exists")
    z = sol.particular

    def dot(v):
        acc = 0
        for a, c in zip(z, v):
            if a and c:
                acc = spec.add(acc, spec.mul(a, c))
        return acc

    rows = [(dot(u),) + tuple(u) for u in U.rows]
    return Submodule.span(U.module, left_zero_rows(spec, rows, 1, r + 1))


def _split_s1(x: Pair) -> list[tuple[Label, tuple[int, ...]]]:
    spec = x.spec
    B = x.B
    U, AU = B.whole, x.A
    found = []
    while not U.is_zero():
        ell = _loewy_length(U)
        top = U.scalar_image(ell - 1)
        S = AU.intersect(top)
        if not S.is_zero():
            a = S.rows[0]
            sol = solve_system(spec, [spec_mul_vec(spec, ell - 1, u) for u in U.rows], a)
            b = _lincomb(spec, sol.particular, U.rows, B.rank)
            # a complement of a inside AU
            coeffs = solve_system(spec, list(AU.rows), a).particular
            i0 = next(i for i, c in enumerate(coeffs) if c % spec.p)
            kill = [g for i, g in enumerate(AU.rows) if i != i0]
            found.append((Label.P(1, ell), b))
        else:
            b = next(u for u in U.rows if any(spec_mul_vec(spec, ell - 1, u)))
            kill = list(AU.rows)
            found.append((Label.P(0, ell), b))
        U = _complement(spec, U, b, kill, ell)
        AU = AU.intersect(U)
    return found


def spec_mul_vec(spec, e, v):
    return tuple(spec.mul_p(x, e) for x in v)


def _witness_from_generators(x: Pair, found) -> DecompReport:
    """Report for ``x = + (b_k Lambda; ...)`` with a verified isomorphism onto the label sum."""
    labels = [lab for lab, _ in found]
    ds = labels_direct_sum(x.spec, labels)
    rows = [[0] * ds.pair.B.rank for _ in range(x.B.rank)]
    for (lab, b), place in zip(found, ds.placement):
        col = x.B.unembed(b)
        for i in range(x.B.rank):
            rows[i][place[0]] = col[i]
    f = PairMorphism(ds.pair, x, tuple(tuple(r) for r in rows))
    g = f.inverse()
    if g is None:
        raise ArithmeticError("constructed decomposition is not an isomorphism")
    return DecompReport.from_labels(labels, g)


def decompose_s1(x: Pair) -> DecompReport:
    """Split a pair with ``pA = 0`` into pickets ``P(0, l)`` and ``P(1, l)``.

    The witness maps ``x`` isomorphically onto the direct sum of the labels.
    """
    if not x.A.scalar_image(1).is_zero():
        raise FunctorError("pA != 0")
    return _witness_from_generators(x, _split_s1(x))


def _picket_generators(x: Pair) -> list[tuple[Label, tuple[int, ...]]]:
    if not x.B.socle <= x.A:
        raise FunctorError("soc B is not contained in A")
    if not x.A.scalar_image(2).is_zero():
        raise FunctorError("p^2 A != 0")
    inner = Pair(x.B, x.A.scalar_image(1), 1)
    return [(Label.P(lab.a + 1, lab.b), b) for lab, b in _split_s1(inner)]


def decompose_socle_contained(x: Pair) -> DecompReport:
    """Split a pair with ``soc B <= A`` into pickets ``P(1, l)`` and ``P(2, l)``."""
    return _witness_from_generators(x, _picket_generators(x))


def lift_morphism(x: Pair, y: Pair, h) -> PairMorphism:
    """A morphism ``f: x -> y`` with ``F(f) = h``."""
    Fx, Fy = apply_F(x), apply_F(y)
    if not pr.is_morphism(h, Fx, Fy):
        raise FunctorError("h is not a morphism of representations")
    spec = x.spec
    p = spec.p
    fx, fy = frame(x), frame(y)
    src = _picket_generators(Pair(x.B, x.a_plus))
    dst = _picket_generators(Pair(y.B, y.a_plus))

    def gen(lab, b):
        return spec_mul_vec(spec, lab.b - lab.a, b)

    # columns of cmat: the socle-level generators of the target pickets in frame coordinates
    cmat = [fy.coords(gen(lab, d)) for lab, d in dst]
    cinv = fp.inverse(fp.transpose(cmat, fy.dim), p) if cmat else []
    if cmat and cinv is None:
        raise ArithmeticError("target picket generators do not form a basis")
    images = []
    for lab, b in src:
        v = fp.matvec(h, fx.coords(gen(lab, b)), p) if fy.dim else ()
        gamma = fp.matvec(cinv, v, p) if cmat else ()
        img = (0,) * y.B.rank
        for g, (lab2, d) in zip(gamma, dst):
            if not g:
                continue
            e = (lab2.b - lab2.a) - (lab.b - lab.a)
            if e < 0 or lab.a < lab2.a:
                raise ArithmeticError("component map does not respect picket levels")
            img = vec_add(spec, img, vec_scale(spec, spec.mul_p(g, e), d))
        images.append(img)
    f = morphism_from_images(x, y, [b for _, b in src], images)
    if not f.is_valid():
        raise ArithmeticError("lifted map does not send A into C")
    if apply_F_morphism(f) != [list(r) for r in h]:
        raise ArithmeticError("lifted map does not induce h")
    return f


def iso_witness(x: Pair, report: DecompReport | None = None, seed: int = 0) -> PairMorphism:
    """An isomorphism from ``x`` onto the direct sum of the labels of ``report``."""
    n, p = x.spec.n, x.spec.p
    Fx = apply_F(x)
    pieces = pr.decompose(Fx, seed=seed)
    labels = [label_to_pair(rl, n) for rl, _ in pieces]
    if report is not None and DecompReport.from_labels(labels).labels != report.labels:
        raise ArithmeticError("representation decomposition disagrees with the report")
    ds = labels_direct_sum(x.spec, labels)
    z = ds.pair
    d = Fx.dim0
    cols_src, cols_dst = [], []
    for (rl, basis), inc, summand in zip(pieces, inclusions(ds), ds.summands):
        R = pr.restrict(Fx, basis)
        g = pr.find_isomorphism(R, apply_F(summand), seed=seed)
        if g is None:
            raise ArithmeticError(f"summand {rl} is not isomorphic to its label")
        emb = fp.matmul(apply_F_morphism(inc), g, p)
        for j, v in enumerate(basis):
            cols_src.append(list(v))
            cols_dst.append([emb[i][j] for i in range(len(emb))])
    # h . S = T with S, T holding the collected columns
    S = fp.transpose(cols_src, d)
    T = fp.transpose(cols_dst, d)
    Sinv = fp.inverse(S, p) if d else []
    h = fp.matmul(T, Sinv, p) if d else []
    f = lift_morphism(x, z, h)
    if f.inverse() is None:
        raise ArithmeticError("lifted isomorphism of representations is not invertible")
    return f
