"""Certified exact equality of integer sparse-matrix products.

The verifiers clear denominators and evaluate identities at rational grid
points, which turns every comparison into an equality of products of integer
matrices.  Doing those products entry-by-entry in Python integers is exact but
far too slow at the sizes the RTT checks reach, so this module runs them
through numpy/scipy int64 kernels guarded by exact a-priori bounds:

* a row-sum ladder (computed in Python bignums) bounds every entry and every
  accumulation term of every partial product; if the bound fits in int64 the
  scipy product is exact as computed;
* otherwise the products are computed modulo enough 23-bit primes that their
  product exceeds twice the bound, and residue equality then proves integer
  equality (per-prime accumulations stay below 2^63 as long as the inner
  dimension is below 2^15, which is asserted).

Any detected mismatch is re-evaluated entrywise in exact Python integers to
produce the witness, so failure reports never depend on the fast path.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import sparse

INT64_SAFE = 2 ** 62
# primes just below 2^23, product ~2^184; the bounds this artifact meets stay
# far below that, and the 15-bit dimension cap keeps p^2 * dim < 2^63.
PRIMES23 = (8388593, 8388587, 8388581, 8388571, 8388547, 8388539, 8388473, 8388461)


def thread_count():
    try:
        t = int(os.environ.get("SUPERYANG_THREADS", "1"))
    except ValueError:
        t = 1
    return max(t, 1)


def pmap(fn, items):
    """Map preserving order; uses a thread pool when SUPERYANG_THREADS > 1."""
    items = list(items)
    t = thread_count()
    if t <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=t) as ex:
        return list(ex.map(fn, items))


class IntMat:
    """Sparse integer COO matrix.  Data lives as an int64 numpy array when it
    fits (the fast path) and as exact Python ints otherwise.  Repeated (r, c)
    positions are allowed and stand for the sum of their values."""

    __slots__ = ("nrows", "ncols", "rows", "cols", "_np_data", "_list_data")

    def __init__(self, nrows, ncols, rows, cols, data):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = np.asarray(rows, dtype=np.int64)
        self.cols = np.asarray(cols, dtype=np.int64)
        if isinstance(data, np.ndarray) and data.dtype == np.int64:
            self._np_data = data
            self._list_data = None
        else:
            self._list_data = list(data)
            try:
                self._np_data = np.array(self._list_data, dtype=np.int64)
            except OverflowError:
                self._np_data = None

    @property
    def data(self):
        if self._list_data is None:
            self._list_data = self._np_data.tolist()
        return self._list_data

    @staticmethod
    def from_dict(nrows, ncols, entries):
        items = sorted((rc, v) for rc, v in entries.items() if v)
        rows = [rc[0] for rc, _ in items]
        cols = [rc[1] for rc, _ in items]
        data = [v for _, v in items]
        return IntMat(nrows, ncols, rows, cols, data)

    def nnz(self):
        return len(self.rows)

    def maxabs(self):
        if self._np_data is not None:
            return int(np.abs(self._np_data).max()) if len(self._np_data) else 0
        return max((abs(v) for v in self.data), default=0)

    def max_rowsum(self):
        "max_r sum_c |A[r,c]| as an exact Python int."
        if len(self.rows) == 0:
            return 0
        if self._np_data is not None:
            counts = np.bincount(self.rows, minlength=self.nrows)
            if self.maxabs() * int(counts.max()) < INT64_SAFE:
                sums = np.zeros(self.nrows, dtype=np.int64)
                np.add.at(sums, self.rows, np.abs(self._np_data))
                return int(sums.max())
        sums = {}
        for r, v in zip(self.rows.tolist(), self.data):
            sums[r] = sums.get(r, 0) + abs(v)
        return max(sums.values(), default=0)

    def to_csr_mod(self, p=None):
        if p is None:
            if self._np_data is None:
                raise OverflowError("entries exceed int64; use the modular path")
            data = self._np_data
        elif self._np_data is not None:
            data = self._np_data % p
        else:
            data = np.array([v % p for v in self.data], dtype=np.int64)
        m = sparse.csr_matrix((data.astype(np.int64), (self.rows, self.cols)),
                              shape=(self.nrows, self.ncols))
        m.sum_duplicates()
        return m

    def row_dict(self):
        out = {}
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.data):
            row = out.setdefault(r, {})
            row[c] = row.get(c, 0) + v
        return out


def chain_bound(chain):
    """Exact bound on |entry| (and on every accumulation partial sum) of each
    prefix product A1..At of the chain, maximized over t.  Row sums dominate
    summed duplicate entries, so the bound is sound for duplicate COO data."""
    bound = 0
    prefix_rowsums = 1
    for m in chain:
        prefix_rowsums *= max(m.max_rowsum(), 1)
        bound = max(bound, prefix_rowsums)
    return bound


def _csr_chain(chain, p=None):
    acc = chain[0].to_csr_mod(p)
    for m in chain[1:]:
        acc = acc @ m.to_csr_mod(p)
        if p is not None:
            acc.data %= p
    acc.eliminate_zeros()
    return acc


def exact_entry(chain, r, c):
    """Entry (r, c) of the product, exactly, via Python-int vector products."""
    vec = {r: 1}
    for m in chain:
        rd = m.row_dict()
        nxt = {}
        for i, coeff in vec.items():
            for j, v in rd.get(i, {}).items():
                nxt[j] = nxt.get(j, 0) + coeff * v
        vec = {k: v for k, v in nxt.items() if v}
    return vec.get(c, 0)


def products_equal(left, right):
    """Certified test  A1..Ak == B1..Bm  for IntMat chains.

    Returns None when equal, otherwise the lexicographically first (row, col)
    where the products differ.
    """
    for chain in (left, right):
        for m in chain:
            if m.nrows >= 1 << 15 or m.ncols >= 1 << 15:
                raise ValueError("matrix dimension too large for certified kernels")
    bound = chain_bound(left) + chain_bound(right)
    if bound < INT64_SAFE:
        diff = (_csr_chain(left) - _csr_chain(right)).tocoo()
        diff.eliminate_zeros()
        if diff.nnz == 0:
            return None
        pos = sorted(zip(diff.row.tolist(), diff.col.tolist()))
        return pos[0]
    # modular certificate: product of primes must exceed 2*bound so that an
    # all-zero residue vector proves the exact zero
    prod = 1
    primes = []
    for p in PRIMES23:
        primes.append(p)
        prod *= p
        if prod > 2 * bound:
            break
    if prod <= 2 * bound:
        raise ValueError("entry bound %d exceeds the modular certificate range" % bound)
    suspects = set()
    for p in primes:
        diff = (_csr_chain(left, p) - _csr_chain(right, p)).tocoo()
        diff.data %= p
        diff.eliminate_zeros()
        if diff.nnz:
            suspects.update(zip(diff.row.tolist(), diff.col.tolist()))
    if not suspects:
        return None
    for r, c in sorted(suspects):
        if exact_entry(left, r, c) != exact_entry(right, r, c):
            return (int(r), int(c))
    raise AssertionError("nonzero residue without an exact mismatch; engine bug")


def exact_matmul(A, B):
    """Exact product of two IntMats: scipy int64 when the certificate allows,
    Python-int dict arithmetic otherwise."""
    if A.ncols != B.nrows:
        raise ValueError("shape mismatch")
    if A.max_rowsum() * B.max_rowsum() < INT64_SAFE and A._np_data is not None \
            and B._np_data is not None:
        prod = (A.to_csr_mod() @ B.to_csr_mod()).tocoo()
        prod.eliminate_zeros()
        return IntMat(A.nrows, B.ncols, prod.row, prod.col,
                      prod.data.astype(np.int64))
    rd = B.row_dict()
    out = {}
    for r, k, a in zip(A.rows.tolist(), A.cols.tolist(), A.data):
        for c, b in rd.get(k, {}).items():
            rc = (r, c)
            s = out.get(rc, 0) + a * b
            if s:
                out[rc] = s
            else:
                out.pop(rc, None)
    return IntMat.from_dict(A.nrows, B.ncols, out)


def products_equal_exact(left, right):
    "Pure Python-int reference implementation (for cross-validation in tests)."
    def full(chain):
        acc = chain[0].row_dict()
        for m in chain[1:]:
            rd = m.row_dict()
            nxt = {}
            for r, row in acc.items():
                tgt = {}
                for k, a in row.items():
                    for c, b in rd.get(k, {}).items():
                        tgt[c] = tgt.get(c, 0) + a * b
                tgt = {c: v for c, v in tgt.items() if v}
                if tgt:
                    nxt[r] = tgt
            acc = nxt
        return acc
    L, R = full(left), full(right)
    keys = set()
    for r, row in L.items():
        keys.update((r, c) for c in row)
    for r, row in R.items():
        keys.update((r, c) for c in row)
    bad = sorted(k for k in keys
                 if L.get(k[0], {}).get(k[1], 0) != R.get(k[0], {}).get(k[1], 0))
    return bad[0] if bad else None
