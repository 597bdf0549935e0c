"""Representations of a bound quiver algebra: hom spaces, twists,
indecomposability, Krull-Schmidt decomposition, and radical powers of the
module category relative to a complete list of indecomposables.

Representations are covariant: M(a): M(s(a)) -> M(t(a)), i.e. left modules
under the functional composition convention.  Morphisms are per-vertex
matrices with N(a) f_s = f_t M(a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import (PrimeField, factor_poly, in_row_space,
                    minimal_polynomial, nullspace_basis, poly_gcd_ext,
                    poly_mul, poly_eval_matrix, algebra_radical, rank,
                    row_space, solve_linear, StructureConstants, inverse)
from .quiver import BoundAlgebra, PathWord, path_source, path_target
from .action import QuiverAction


class NonSplitEndError(Exception):
    """End(M)/rad is a proper field extension of F_p: M is indecomposable
    over F_p but not absolutely; reported rather than silently decided."""


class Representation:
    """Vertex dimensions plus one matrix per arrow (target x source)."""

    def __init__(self, algebra: BoundAlgebra, dims, maps, check: bool = True):
        self.algebra = algebra
        self.F = algebra.F
        q = algebra.quiver
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != q.n_vertices:
            raise ValueError("one dimension per vertex required")
        self.maps = []
        for a, arr in enumerate(q.arrows):
            m = maps[a] if a < len(maps) and maps[a] is not None else None
            shape = (self.dims[arr.target], self.dims[arr.source])
            if m is None:
                m = self.F.zeros(*shape)
            m = np.asarray(m, dtype=np.int64) % self.F.p
            if m.shape != shape:
                raise ValueError(
                    f"map for arrow {arr.name} has shape {m.shape}, want {shape}")
            self.maps.append(m)
        if check:
            bad = self.relation_defects()
            if bad:
                raise ValueError(f"relations violated: {bad}")

    # -- structure ----------------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, w: PathWord) -> np.ndarray:
        q = self.algebra.quiver
        if w.is_trivial():
            return self.F.eye(self.dims[w.vertex])
        out = None
        for a in reversed(w.arrows):  # rightmost applied first
            out = self.maps[a] if out is None else self.F.mul(self.maps[a], out)
        return out

    def element_matrix(self, x: np.ndarray, src: int, tgt: int) -> np.ndarray:
        """Matrix of an algebra element restricted to paths src -> tgt."""
        A, F = self.algebra, self.F
        out = F.zeros(self.dims[tgt], self.dims[src])
        for k in np.nonzero(x % F.p)[0]:
            w = A.basis[int(k)]
            if path_source(A.quiver, w) != src or path_target(A.quiver, w) != tgt:
                continue
            out = F.add(out, F.smul(int(x[k]), self.path_matrix(w)))
        return out

    def relation_defects(self):
        bad = []
        for i, r in enumerate(self.algebra.relations):
            _, w0 = r.terms[0]
            s, t = path_source(self.algebra.quiver, w0), path_target(self.algebra.quiver, w0)
            acc = self.F.zeros(self.dims[t], self.dims[s])
            for c, w in r.terms:
                acc = self.F.add(acc, self.F.smul(c, self.path_matrix(w)))
            if np.any(acc):
                bad.append(i)
        return bad

    def radical_layers(self) -> tuple[tuple[int, ...], ...]:
        """Loewy series dim vectors (top first); a canonical iso invariant."""
        F, q = self.F, self.algebra.quiver
        # current radical power as per-vertex row-space bases
        cur = [self.F.eye(d) for d in self.dims]
        layers = []
        while any(b.shape[0] for b in cur):
            nxt = []
            for v in range(q.n_vertices):
                pieces = []
                for a in q.arrows_into(v):
                    src = self.algebra.quiver.arrows[a].source
                    if cur[src].shape[0]:
                        pieces.append(F.mul(cur[src], self.maps[a].T))
                if pieces:
                    nxt.append(row_space(F, np.concatenate(pieces, axis=0)))
                else:
                    nxt.append(F.zeros(0, self.dims[v]))
            layers.append(tuple(cur[v].shape[0] - nxt[v].shape[0]
                                for v in range(q.n_vertices)))
            if all(n.shape[0] == c.shape[0] for n, c in zip(nxt, cur)):
                raise AssertionError("radical filtration is not descending")
            cur = nxt
        return tuple(layers)

    def label(self) -> str:
        return "|".join(",".join(str(d) for d in layer)
                        for layer in self.radical_layers()) or "0"

    def __repr__(self):
        return f"Rep{self.dims}"


@dataclass
class RepMorphism:
    source: Representation
    target: Representation
    blocks: list[np.ndarray]  # per vertex, target-dim x source-dim

    def is_valid(self) -> bool:
        q = self.source.algebra.quiver
        F = self.source.F
        for a, arr in enumerate(q.arrows):
            lhs = F.mul(self.blocks[arr.target], self.source.maps[a])
            rhs = F.mul(self.target.maps[a], self.blocks[arr.source])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(not np.any(b) for b in self.blocks)

    def to_vector(self) -> np.ndarray:
        parts = [b.reshape(-1) for b in self.blocks]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def compose(self, earlier: "RepMorphism") -> "RepMorphism":
        """self after earlier."""
        F = self.source.F
        blocks = [F.mul(b2, b1) for b1, b2 in zip(earlier.blocks, self.blocks)]
        return RepMorphism(earlier.source, self.target, blocks)

    def is_invertible(self) -> bool:
        F = self.source.F
        if self.source.dims != self.target.dims:
            return False
        return all(rank(F, b) == b.shape[0] == b.shape[1] for b in self.blocks)

    def inverse(self) -> "RepMorphism":
        F = self.source.F
        blocks = []
        for b in self.blocks:
            binv = inverse(F, b)
            if binv is None:
                raise ValueError("morphism is not invertible")
            blocks.append(binv)
        return RepMorphism(self.target, self.source, blocks)


def zero_morphism(M: Representation, N: Representation) -> RepMorphism:
    F = M.F
    return RepMorphism(M, N, [F.zeros(dn, dm) for dm, dn in zip(M.dims, N.dims)])


def identity_morphism(M: Representation) -> RepMorphism:
    return RepMorphism(M, M, [M.F.eye(d) for d in M.dims])


def morphism_from_vector(M: Representation, N: Representation,
                         vec: np.ndarray) -> RepMorphism:
    blocks = []
    off = 0
    for dm, dn in zip(M.dims, N.dims):
        blocks.append(vec[off: off + dm * dn].reshape(dn, dm) % M.F.p)
        off += dm * dn
    return RepMorphism(M, N, blocks)


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: list[RepMorphism]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def hom_basis(M: Representation, N: Representation) -> HomSpace:
    """Solve the commuting-square system; echelon-normalized basis.

    Unknowns are the per-vertex blocks flattened row-major in vertex order.
    """
    if M.algebra is not N.algebra and M.algebra.dim != N.algebra.dim:
        raise ValueError("representations over different algebras")
    F, q = M.F, M.algebra.quiver
    nunk = sum(dm * dn for dm, dn in zip(M.dims, N.dims))
    if nunk == 0:
        return HomSpace(M, N, [])
    offsets = []
    off = 0
    for dm, dn in zip(M.dims, N.dims):
        offsets.append(off)
        off += dm * dn
    rows = []
    for a, arr in enumerate(q.arrows):
        s, t = arr.source, arr.target
        ds_m, dt_m = M.dims[s], M.dims[t]
        ds_n, dt_n = N.dims[s], N.dims[t]
        # constraint: f_t M(a) - N(a) f_s = 0, entries (i, j) i<dt_n, j<ds_m
        nrows = dt_n * ds_m
        if nrows == 0:
            continue
        block = F.zeros(nrows, nunk)
        Ma, Na = M.maps[a], N.maps[a]
        for i in range(dt_n):
            for j in range(ds_m):
                r = i * ds_m + j
                # f_t entries: f_t[i, k] * M(a)[k, j]
                for k in range(dt_m):
                    block[r, offsets[t] + i * dt_m + k] = (
                        block[r, offsets[t] + i * dt_m + k] + Ma[k, j]) % F.p
                # -N(a)[i, k] * f_s[k, j]
                for k in range(ds_n):
                    block[r, offsets[s] + k * ds_m + j] = (
                        block[r, offsets[s] + k * ds_m + j] - Na[i, k]) % F.p
        rows.append(block)
    A = np.concatenate(rows, axis=0) if rows else F.zeros(0, nunk)
    basis_vecs = nullspace_basis(F, A)
    basis = [morphism_from_vector(M, N, basis_vecs[i])
             for i in range(basis_vecs.shape[0])]
    for f in basis:
        if not f.is_valid():
            raise AssertionError("hom basis element fails commuting squares")
    return HomSpace(M, N, basis)


# ---------------------------------------------------------------------------
# Twists
# ---------------------------------------------------------------------------

def twist(action: QuiverAction, g, M: Representation) -> Representation:
    """The module gM with (gM)(x) = M(g x), arrows transported with the
    action scalars: (gM)(a) = c * M(b) for g(a) = c b."""
    q = M.algebra.quiver
    F = M.F
    dims = [M.dims[action.vertex(g, v)] for v in range(q.n_vertices)]
    maps = []
    for a in range(q.n_arrows):
        c, b = action.arrow(g, a)
        maps.append(F.smul(c, M.maps[b]))
    return Representation(M.algebra, dims, maps)


def twist_morphism(action: QuiverAction, g, f: RepMorphism,
                   tM: Representation, tN: Representation) -> RepMorphism:
    q = f.source.algebra.quiver
    blocks = [f.blocks[action.vertex(g, v)] for v in range(q.n_vertices)]
    return RepMorphism(tM, tN, blocks)


def module_stabilizer(action: QuiverAction, M: Representation) -> list:
    """{g : gM isomorphic to M} (a subgroup; tested elementwise)."""
    out = []
    for g in action.group.elements:
        if is_isomorphic(twist(action, g, M), M):
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# Endomorphism algebras, indecomposability, Krull-Schmidt
# ---------------------------------------------------------------------------

def end_algebra(M: Representation):
    """(StructureConstants of End(M), hom basis).  The identity is included
    in the span automatically; its coordinates are solved for."""
    F = M.F
    H = hom_basis(M, M)
    n = H.dimension
    if n == 0:
        raise ValueError("End of the zero module is not an algebra here")
    vecs = np.stack([f.to_vector() for f in H.basis], axis=0)
    table = F.zeros(n * n, n).reshape(n, n, n)
    for i in range(n):
        for j in range(n):
            prod = H.basis[i].compose(H.basis[j])  # b_i after b_j
            coords = solve_linear(F, vecs.T, prod.to_vector().reshape(-1, 1))
            if coords is None:
                raise AssertionError("End(M) not closed under composition")
            table[i, j] = coords[:, 0]
    idv = identity_morphism(M).to_vector()
    one = solve_linear(F, vecs.T, idv.reshape(-1, 1))
    if one is None:
        raise AssertionError("identity not in End(M) span")
    return StructureConstants(F, table, one[:, 0]), H


def is_indecomposable(M: Representation) -> bool:
    """dim(End(M)/rad End(M)) == 1.

    A value > 1 with no splitting idempotent would mean a non-split
    endomorphism ring (see NonSplitEndError in decompose); for split field
    data this function is the local-endomorphism test.
    """
    if M.is_zero():
        raise ValueError("zero module")
    E, _ = end_algebra(M)
    radb = algebra_radical(E)
    return E.dim - radb.shape[0] == 1


def _find_splitting_idempotent(M: Representation):
    """A nontrivial exact idempotent endomorphism of M, or None if End(M)
    is local.  Deterministic: scans End basis elements, then pairwise sums
    and products, by primary decomposition of minimal polynomials."""
    F = M.F
    E, H = end_algebra(M)
    radb = algebra_radical(E)
    if E.dim - radb.shape[0] == 1:
        return None

    def idempotent_from(fmat: np.ndarray):
        mp = minimal_polynomial(F, fmat)
        factors = factor_poly(F, mp)
        if len(factors) < 2:
            return None
        # CRT idempotent cutting out the first primary component
        f1 = factors[0][0]
        q1 = f1
        for _ in range(factors[0][1] - 1):
            q1 = poly_mul(F, q1, f1)
        rest = [1]
        for fac, mult in factors[1:]:
            for _ in range(mult):
                rest = poly_mul(F, rest, fac)
        g, u, v = poly_gcd_ext(F, q1, rest)
        if len(g) != 1:
            return None
        # e = u*q1 evaluated at f kills the first component, is 1 on the rest
        e = poly_eval_matrix(F, poly_mul(F, u, q1), fmat)
        if not np.any(e) or np.array_equal(e, F.eye(e.shape[0])):
            return None
        if not np.array_equal(F.mul(e, e), e):
            return None
        return e

    mats = [_total_matrix(f) for f in H.basis]
    candidates = list(mats)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            candidates.append(F.add(mats[i], mats[j]))
            candidates.append(F.mul(mats[i], mats[j]))
    for c in candidates:
        e = idempotent_from(c)
        if e is not None:
            return _matrix_to_morphism(M, e)

    # quotient is commutative with no split: a genuine field extension
    quot_dim = E.dim - radb.shape[0]
    raise NonSplitEndError(
        f"End(M)/rad has dimension {quot_dim} with no splitting idempotent "
        f"found; non-split endomorphism ring over F_{F.p}")


def _total_matrix(f: RepMorphism) -> np.ndarray:
    """Block-diagonal total matrix of a morphism M -> M."""
    F = f.source.F
    n = f.source.total_dim
    out = F.zeros(n, n)
    off = 0
    for v, d in enumerate(f.source.dims):
        out[off: off + d, off: off + d] = f.blocks[v]
        off += d
    return out


def _matrix_to_morphism(M: Representation, total: np.ndarray) -> RepMorphism:
    blocks = []
    off = 0
    for d in M.dims:
        blocks.append(total[off: off + d, off: off + d] % M.F.p)
        off += d
    return RepMorphism(M, M, blocks)


def _image_subrep(e: RepMorphism):
    """The image of an idempotent endomorphism as a representation, with
    inclusion and projection morphisms."""
    M = e.source
    F, q = M.F, M.algebra.quiver
    bases = [row_space(F, b.T) for b in e.blocks]  # rows span image at v
    dims = [b.shape[0] for b in bases]
    maps = []
    for a, arr in enumerate(q.arrows):
        s, t = arr.source, arr.target
        if dims[s] == 0 or dims[t] == 0:
            maps.append(F.zeros(dims[t], dims[s]))
            continue
        img = F.mul(M.maps[a], bases[s].T)  # columns: images of basis of im_s
        coords = solve_linear(F, bases[t].T, img)
        if coords is None:
            raise AssertionError("image not closed under arrow action")
        maps.append(coords)
    sub = Representation(M.algebra, dims, maps)
    incl = RepMorphism(sub, M, [bases[v].T.copy() for v in range(q.n_vertices)])
    # projection: solve incl . proj = e
    proj_blocks = []
    for v in range(q.n_vertices):
        if dims[v] == 0:
            proj_blocks.append(F.zeros(0, M.dims[v]))
            continue
        sol = solve_linear(F, bases[v].T, e.blocks[v])
        proj_blocks.append(sol)
    proj = RepMorphism(M, sub, proj_blocks)
    if not incl.is_valid() or not proj.is_valid():
        raise AssertionError("image inclusion/projection fails commutation")
    return sub, incl, proj


@dataclass
class Summand:
    rep: Representation
    inclusion: RepMorphism   # summand -> M
    projection: RepMorphism  # M -> summand


def split_by_idempotent(M: Representation, e: RepMorphism):
    """M = im(e) + im(1-e) with inclusion/projection witnesses."""
    one = identity_morphism(M)
    comp = RepMorphism(M, M, [M.F.sub(a, b) for a, b in zip(one.blocks, e.blocks)])
    s1, i1, p1 = _image_subrep(e)
    s2, i2, p2 = _image_subrep(comp)
    return Summand(s1, i1, p1), Summand(s2, i2, p2)


def decompose(M: Representation) -> list[Summand]:
    """Full Krull-Schmidt decomposition with explicit witnesses.

    Summands are returned in canonical order (dim vector lex, then Loewy
    label).  The inclusion/projection pairs compose to idempotents of M
    summing to the identity.
    """
    if M.is_zero():
        return []
    work = [Summand(M, identity_morphism(M), identity_morphism(M))]
    out: list[Summand] = []
    while work:
        cur = work.pop()
        e = _find_splitting_idempotent(cur.rep)
        if e is None:
            out.append(cur)
            continue
        for piece in split_by_idempotent(cur.rep, e):
            inc = cur.inclusion.compose(piece.inclusion)
            prj = piece.projection.compose(cur.projection)
            work.append(Summand(piece.rep, inc, prj))
    out.sort(key=lambda s: (s.rep.dims, s.rep.label()))
    total = sum(s.rep.total_dim for s in out)
    if total != M.total_dim:
        raise AssertionError("decomposition loses dimension")
    # verify the witnesses: projections . inclusions = identity blocks
    F = M.F
    for i, s in enumerate(out):
        pi = s.projection.compose(s.inclusion)
        if not all(np.array_equal(b, F.eye(b.shape[0])) for b in pi.blocks):
            raise AssertionError("summand witness is not a splitting")
    return out


def is_isomorphic(M: Representation, N: Representation) -> bool:
    return isomorphism(M, N) is not None


def isomorphism(M: Representation, N: Representation):
    """An explicit isomorphism M -> N, or None.

    For indecomposables this is exact: M ~ N iff some product
    g_j f_i of hom-basis elements is invertible (local End rings).  For
    general inputs the summand matching handles it.
    """
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return zero_morphism(M, N)
    H1 = hom_basis(M, N)
    if not H1.basis:
        return None
    for f in H1.basis:
        if f.is_invertible():
            return f
    H2 = hom_basis(N, M)
    for f in H1.basis:
        for g in H2.basis:
            if g.compose(f).is_invertible():
                # g f invertible makes f a split mono, hence iso (equal dims);
                # this pairwise scan is exact when End(M) is local
                if not f.is_invertible():
                    raise AssertionError("split mono with equal dims must be iso")
                return f
    # decomposable inputs: seeded combinations, each verified invertible
    rng = np.random.RandomState(20240915)
    for _ in range(200):
        coeffs = rng.randint(0, M.F.p, len(H1.basis))
        f = combine(H1, coeffs)
        if f.is_invertible():
            return f
    return None


def combine(H: HomSpace, coeffs) -> RepMorphism:
    F = H.source.F
    blocks = [F.zeros(dn, dm) for dm, dn in zip(H.source.dims, H.target.dims)]
    for c, f in zip(coeffs, H.basis):
        blocks = [F.add(b, F.smul(int(c), fb)) for b, fb in zip(blocks, f.blocks)]
    return RepMorphism(H.source, H.target, blocks)


# ---------------------------------------------------------------------------
# Radical powers relative to a complete indecomposable list
# ---------------------------------------------------------------------------

class RadicalCalculator:
    """rad^n(M, N) spaces for M, N drawn from a fixed complete list of
    indecomposables (canonical representatives, pairwise non-isomorphic).

    rad^1(M, N) = Hom(M, N) for M != N in the list, rad End(M) on the
    diagonal; rad^{n+1}(M, N) = sum_Z rad^n(Z, N) . rad^1(M, Z).
    """

    def __init__(self, reps: list[Representation], cutoff: int = 64):
        self.reps = reps
        self.cutoff = cutoff
        self.F = reps[0].F if reps else None
        self._hom: dict[tuple[int, int], HomSpace] = {}
        self._rad: list[dict[tuple[int, int], np.ndarray]] = []  # [n-1][i,j]
        self._build_rad1()

    def hom(self, i: int, j: int) -> HomSpace:
        if (i, j) not in self._hom:
            self._hom[(i, j)] = hom_basis(self.reps[i], self.reps[j])
        return self._hom[(i, j)]

    def _build_rad1(self):
        F = self.F
        level: dict[tuple[int, int], np.ndarray] = {}
        for i in range(len(self.reps)):
            for j in range(len(self.reps)):
                H = self.hom(i, j)
                if not H.basis:
                    continue
                vecs = np.stack([f.to_vector() for f in H.basis], axis=0)
                if i != j:
                    level[(i, j)] = vecs
                else:
                    E, HE = end_algebra(self.reps[i])
                    radb = algebra_radical(E)
                    if radb.shape[0]:
                        base = np.stack([f.to_vector() for f in HE.basis], axis=0)
                        level[(i, j)] = row_space(F, F.mul(radb, base))
        self._rad.append(level)

    def rad(self, i: int, j: int, n: int) -> np.ndarray:
        """Echelon row basis of rad^n(reps[i], reps[j]) as morphism vectors."""
        if n <= 0:
            H = self.hom(i, j)
            if not H.basis:
                return np.zeros((0, _pair_len(self.reps[i], self.reps[j])),
                                dtype=np.int64)
            return row_space(self.F, np.stack([f.to_vector() for f in H.basis]))
        while len(self._rad) < n:
            self._grow()
        return self._rad[n - 1].get(
            (i, j), np.zeros((0, _pair_len(self.reps[i], self.reps[j])), dtype=np.int64))

    def _compose_spans(self, i: int, k: int, j: int,
                       A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """All pairwise compositions B o A, A in Hom(i, k), B in Hom(k, j),
        as stacked morphism vectors (vectorized per vertex)."""
        F = self.F
        Mi, Mk, Mj = self.reps[i], self.reps[k], self.reps[j]
        na, nb = A.shape[0], B.shape[0]
        parts = []
        offa = offb = 0
        for di, dk, dj in zip(Mi.dims, Mk.dims, Mj.dims):
            Ab = A[:, offa: offa + dk * di].reshape(na, dk, di)
            Bb = B[:, offb: offb + dj * dk].reshape(nb, dj, dk)
            prod = np.einsum("bxy,ayz->baxz", Bb, Ab) % F.p
            parts.append(prod.reshape(nb * na, dj * di))
            offa += dk * di
            offb += dj * dk
        return np.concatenate(parts, axis=1) if parts else \
            np.zeros((nb * na, 0), dtype=np.int64)

    def _grow(self):
        F = self.F
        prev = self._rad[-1]
        rad1 = self._rad[0]
        nxt: dict[tuple[int, int], np.ndarray] = {}
        for (i, j) in prev.keys() | rad1.keys():
            pieces = []
            for k in range(len(self.reps)):
                A = rad1.get((i, k))
                B = prev.get((k, j))
                if A is None or B is None:
                    continue
                pieces.append(self._compose_spans(i, k, j, A, B))
            if pieces:
                span = row_space(F, np.concatenate(pieces, axis=0))
                if span.shape[0]:
                    nxt[(i, j)] = span
        self._rad.append(nxt)

    def rad_dim(self, i: int, j: int, n: int) -> int:
        return self.rad(i, j, n).shape[0]

    def all_zero_at(self, n: int) -> bool:
        while len(self._rad) < n:
            self._grow()
        return not self._rad[n - 1]

    def membership_level(self, i: int, j: int, f: RepMorphism) -> int:
        """Largest n <= cutoff with f in rad^n; 0 if f is not radical,
        cutoff+1 sentinel never returned for nonzero f (chain vanishes)."""
        if f.is_zero():
            return self.cutoff + 1
        vec = f.to_vector()
        level = 0
        for n in range(1, self.cutoff + 1):
            basis = self.rad(i, j, n)
            if basis.shape[0] and in_row_space(self.F, basis, vec):
                level = n
            else:
                break
        return level

    def index_of(self, M: Representation) -> int:
        for i, R in enumerate(self.reps):
            if R is M:
                return i
        for i, R in enumerate(self.reps):
            if R.dims == M.dims and is_isomorphic(R, M):
                return i
        raise KeyError("module not in the indecomposable list")


def _pair_len(M: Representation, N: Representation) -> int:
    return sum(dm * dn for dm, dn in zip(M.dims, N.dims))


def rad_power_basis(calc: RadicalCalculator, M: Representation,
                    N: Representation, n: int) -> list[RepMorphism]:
    i, j = calc.index_of(M), calc.index_of(N)
    rows = calc.rad(i, j, n)
    return [morphism_from_vector(calc.reps[i], calc.reps[j], rows[r])
            for r in range(rows.shape[0])]


def irr_space(calc: RadicalCalculator, M: Representation, N: Representation):
    """(dim irr(M, N), representative morphisms completing rad^2 to rad)."""
    i, j = calc.index_of(M), calc.index_of(N)
    r1 = calc.rad(i, j, 1)
    r2 = calc.rad(i, j, 2)
    d = r1.shape[0] - r2.shape[0]
    reps = []
    if d > 0:
        F = calc.F
        span = r2.copy() if r2.shape[0] else np.zeros((0, r1.shape[1]), dtype=np.int64)
        for r in range(r1.shape[0]):
            vec = r1[r]
            if span.shape[0] and in_row_space(F, span, vec):
                continue
            if not span.shape[0] and not np.any(vec):
                continue
            reps.append(morphism_from_vector(calc.reps[i], calc.reps[j], vec))
            span = (row_space(F, np.concatenate([span, vec.reshape(1, -1)]))
                    if span.shape[0] else vec.reshape(1, -1).copy())
            if len(reps) == d:
                break
    return d, reps


# ---------------------------------------------------------------------------
# Morphism radical level between decomposable modules (componentwise)
# ---------------------------------------------------------------------------

def morphism_level(calc: RadicalCalculator, f: RepMorphism,
                   msum: list[Summand], nsum: list[Summand],
                   miso: list[tuple[int, RepMorphism]],
                   niso: list[tuple[int, RepMorphism]]) -> int:
    """Radical level of f: M -> N through summand decompositions.

    `miso[k] = (index in calc.reps, iso: canonical -> summand rep)`, same
    for `niso`.  Componentwise per the block criterion: the level of f is
    the minimum over blocks of their levels (0 = some block not radical).
    """
    best = calc.cutoff + 1
    for a, ms in enumerate(msum):
        ia, ua = miso[a]
        for b, ns in enumerate(nsum):
            ib, ub = niso[b]
            block = ns.projection.compose(f).compose(ms.inclusion)
            canon = ub.inverse().compose(block).compose(ua)
            lvl = calc.membership_level(ia, ib, canon)
            best = min(best, lvl)
    return best
