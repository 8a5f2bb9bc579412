"""Pure-Python reference kernels.

Ring elements are plain ints in ``[0, p**n)``.  For ``ZMOD`` the int is the
residue itself; for ``TRUNCPOLY`` it packs the coefficient vector of
``c_0 + c_1 T + ... + c_{n-1} T^{n-1}`` as ``sum(c_i * p**i)``.  With this
packing, valuation, multiplication by ``p**k`` and division with remainder by
``p**k`` are the same integer operations for both rings.

``_ckernels.pyx`` implements the same functions; keep them in sync.
"""

from functools import lru_cache

ZMOD = 0
TRUNCPOLY = 1


def valuation(x, p, n):
    if x == 0:
        return n
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _digits(x, p, n):
    out = [0] * n
    for i in range(n):
        x, out[i] = divmod(x, p)
    return out


def _pack(ds, p):
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


class Arithmetic:
    """Ring operations on encoded ints for one ``(p, n, kind)``."""

    def __init__(self, p, n, kind):
        self.p, self.n, self.kind = p, n, kind
        self.q = p**n
        if kind == TRUNCPOLY and self.q <= 4096:
            self._tables()
        else:
            self._add_t = self._mul_t = None

    def _tables(self):
        q, p, n = self.q, self.p, self.n
        digs = [_digits(x, p, n) for x in range(q)]
        self._add_t = [
            [_pack([(a + b) % p for a, b in zip(digs[x], digs[y])], p) for y in range(q)]
            for x in range(q)
        ]
        self._mul_t = [[self._tp_mul(digs[x], digs[y]) for y in range(q)] for x in range(q)]
        self._neg_t = [_pack([(-a) % p for a in digs[x]], p) for x in range(q)]

    def _tp_mul(self, da, db):
        p, n = self.p, self.n
        out = [0] * n
        for i, a in enumerate(da):
            if a:
                for j in range(n - i):
                    out[i + j] = (out[i + j] + a * db[j]) % p
        return _pack(out, p)

    def add(self, a, b):
        if self.kind == ZMOD:
            return (a + b) % self.q
        if self._add_t is not None:
            return self._add_t[a][b]
        p = self.p
        return _pack([(x + y) % p for x, y in zip(_digits(a, p, self.n), _digits(b, p, self.n))], p)

    def neg(self, a):
        if self.kind == ZMOD:
            return (-a) % self.q
        if self._add_t is not None:
            return self._neg_t[a]
        p = self.p
        return _pack([(-x) % p for x in _digits(a, p, self.n)], p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == ZMOD:
            return (a * b) % self.q
        if self._mul_t is not None:
            return self._mul_t[a][b]
        return self._tp_mul(_digits(a, self.p, self.n), _digits(b, self.p, self.n))

    def inverse(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("not a unit")
        if self.kind == ZMOD:
            return pow(a, -1, self.q)
        # a = c0 * (1 - t) with t nilpotent
        p, n = self.p, self.n
        c0inv = pow(a % p, -1, p)
        t = self.neg(self.sub(self.mul(c0inv, a), 1))
        acc, term = 1, 1
        for _ in range(n - 1):
            term = self.mul(term, t)
            acc = self.add(acc, term)
        return self.mul(c0inv, acc)


@lru_cache(maxsize=None)
def arithmetic(p, n, kind):
    return Arithmetic(p, n, kind)


def howell_form(rows, ncols, p, n, kind):
    """Canonical echelon (Howell) form of the row span over the chain ring.

    Pivot entries are ``p**v``; entries above a pivot are reduced below
    ``p**v``; for each row, ``p**(n-v)`` times it lies in the span of the rows
    below.  Equal spans give identical output.
    """
    ar = arithmetic(p, n, kind)
    q = ar.q
    pool = [list(r) for r in rows if any(r)]
    out = []
    for c in range(ncols):
        best, bv = -1, n
        for i, r in enumerate(pool):
            x = r[c]
            if x:
                v = valuation(x, p, n)
                if v < bv:
                    best, bv = i, v
                    if v == 0:
                        break
        if best < 0:
            continue
        piv = pool.pop(best)
        pv = p**bv
        u = piv[c] // pv
        if u != 1:
            ui = ar.inverse(u)
            piv = [ar.mul(ui, x) if x else 0 for x in piv]
        for r in pool:
            x = r[c]
            if x:
                f = x // pv
                for k in range(c, ncols):
                    if piv[k]:
                        r[k] = ar.sub(r[k], ar.mul(f, piv[k]))
        if bv:
            s = p ** (n - bv)
            extra = [(x * s) % q for x in piv]
            if any(extra):
                pool.append(extra)
        pool = [r for r in pool if any(r)]
        out.append((c, pv, piv))
    for j in range(len(out)):
        rj = out[j][2]
        for i in range(j + 1, len(out)):
            c, pv, ri = out[i]
            x = rj[c]
            if x >= pv:
                f = x // pv
                for k in range(c, ncols):
                    if ri[k]:
                        rj[k] = ar.sub(rj[k], ar.mul(f, ri[k]))
    return [tuple(r) for _, _, r in out]
