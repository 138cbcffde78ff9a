# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernel; mirror of _pykernel.

Monomials are bytes in order-major layout.  Exponents and support masks are
kept in contiguous C buffers so the divisor scan and the reduction loop run
without touching Python objects.  Limited to 256 variables (4 support
words); the engine falls back to the pure kernel beyond that.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

IMPLEMENTATION = "c"

DEF MAX_WORDS = 4


def divides(bytes a, bytes b):
    cdef Py_ssize_t n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch")
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
    cdef Py_ssize_t i
    for i in range(n):
        if pa[i] > pb[i]:
            return False
    return True


def exp_mul(bytes a, bytes b):
    cdef Py_ssize_t n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch")
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* po = <unsigned char*> PyBytes_AS_STRING(out)
    cdef Py_ssize_t i
    cdef int v
    for i in range(n):
        v = pa[i] + pb[i]
        if v > 255:
            raise OverflowError("exponent above 255")
        po[i] = <unsigned char> v
    return out


def exp_div(bytes a, bytes b):
    cdef Py_ssize_t n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch")
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* po = <unsigned char*> PyBytes_AS_STRING(out)
    cdef Py_ssize_t i
    for i in range(n):
        if pb[i] > pa[i]:
            raise ArithmeticError("not divisible")
        po[i] = pa[i] - pb[i]
    return out


def exp_lcm(bytes a, bytes b):
    cdef Py_ssize_t n = len(a)
    if len(b) != n:
        raise ValueError("length mismatch")
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char* po = <unsigned char*> PyBytes_AS_STRING(out)
    cdef Py_ssize_t i
    for i in range(n):
        po[i] = pa[i] if pa[i] >= pb[i] else pb[i]
    return out


def support_mask(bytes a):
    cdef Py_ssize_t n = len(a)
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef object m = 0
    cdef Py_ssize_t i
    for i in range(n):
        if pa[i]:
            m |= 1 << i
    return m


cdef void _fill_support(const unsigned char* p, Py_ssize_t n,
                        unsigned long long* words) noexcept:
    cdef Py_ssize_t i
    for i in range(MAX_WORDS):
        words[i] = 0
    for i in range(n):
        if p[i]:
            words[i >> 6] |= (<unsigned long long> 1) << (i & 63)


cdef class ReducerIndex:
    """Append-only marked-binomial store with C-speed divisor lookup."""

    cdef Py_ssize_t nvars, count, cap
    cdef unsigned char* leads
    cdef unsigned char* trails
    cdef unsigned long long* supports

    def __cinit__(self, Py_ssize_t nvars):
        if nvars <= 0 or nvars > 64 * MAX_WORDS:
            raise ValueError(f"nvars must be in 1..{64 * MAX_WORDS}")
        self.nvars = nvars
        self.count = 0
        self.cap = 64
        self.leads = <unsigned char*> malloc(self.cap * nvars)
        self.trails = <unsigned char*> malloc(self.cap * nvars)
        self.supports = <unsigned long long*> malloc(
            self.cap * MAX_WORDS * sizeof(unsigned long long))
        if self.leads == NULL or self.trails == NULL or self.supports == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.leads)
        free(self.trails)
        free(self.supports)

    def __len__(self):
        return self.count

    def add(self, bytes lead, bytes trail):
        if len(lead) != self.nvars or len(trail) != self.nvars:
            raise ValueError("monomial length does not match the universe")
        cdef Py_ssize_t newcap
        if self.count == self.cap:
            newcap = self.cap * 2
            self.leads = <unsigned char*> realloc(self.leads, newcap * self.nvars)
            self.trails = <unsigned char*> realloc(self.trails, newcap * self.nvars)
            self.supports = <unsigned long long*> realloc(
                self.supports, newcap * MAX_WORDS * sizeof(unsigned long long))
            if self.leads == NULL or self.trails == NULL or self.supports == NULL:
                raise MemoryError()
            self.cap = newcap
        memcpy(self.leads + self.count * self.nvars,
               PyBytes_AS_STRING(lead), self.nvars)
        memcpy(self.trails + self.count * self.nvars,
               PyBytes_AS_STRING(trail), self.nvars)
        _fill_support(<const unsigned char*> PyBytes_AS_STRING(lead), self.nvars,
                      self.supports + self.count * MAX_WORDS)
        self.count += 1

    cdef Py_ssize_t _find(self, const unsigned char* m,
                          const unsigned long long* msup) noexcept:
        cdef Py_ssize_t i, j
        cdef const unsigned char* lead
        cdef const unsigned long long* sup
        cdef bint ok
        for i in range(self.count):
            sup = self.supports + i * MAX_WORDS
            if (sup[0] & ~msup[0]) or (sup[1] & ~msup[1]) \
                    or (sup[2] & ~msup[2]) or (sup[3] & ~msup[3]):
                continue
            lead = self.leads + i * self.nvars
            ok = True
            for j in range(self.nvars):
                if lead[j] > m[j]:
                    ok = False
                    break
            if ok:
                return i
        return -1

    def find_divisor(self, bytes m):
        if len(m) != self.nvars:
            raise ValueError("monomial length does not match the universe")
        cdef unsigned long long msup[MAX_WORDS]
        cdef const unsigned char* pm = <const unsigned char*> PyBytes_AS_STRING(m)
        _fill_support(pm, self.nvars, msup)
        return self._find(pm, msup)

    def normal_form(self, bytes m, Py_ssize_t max_steps=0):
        if len(m) != self.nvars:
            raise ValueError("monomial length does not match the universe")
        cdef unsigned char* work = <unsigned char*> malloc(self.nvars)
        if work == NULL:
            raise MemoryError()
        memcpy(work, PyBytes_AS_STRING(m), self.nvars)
        cdef unsigned long long msup[MAX_WORDS]
        cdef Py_ssize_t i, j, steps = 0
        cdef int v
        cdef const unsigned char* lead
        cdef const unsigned char* trail
        try:
            while True:
                _fill_support(work, self.nvars, msup)
                i = self._find(work, msup)
                if i < 0:
                    return PyBytes_FromStringAndSize(<char*> work, self.nvars)
                if max_steps and steps >= max_steps:
                    return None
                steps += 1
                lead = self.leads + i * self.nvars
                trail = self.trails + i * self.nvars
                for j in range(self.nvars):
                    v = work[j] - lead[j] + trail[j]
                    if v > 255:
                        raise OverflowError("exponent above 255")
                    work[j] = <unsigned char> v
        finally:
            free(work)
