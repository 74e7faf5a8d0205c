"""Multi-leg tensors of words with Scalar coefficients."""
from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .ncalg import NCPoly, Word
from .scalar import ONE, ZERO, Scalar


class Tensor:
    """Finite map (word, ..., word) -> Scalar with a fixed number of legs."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping | None = None):
        self.arity = arity
        t = {}
        if terms:
            for k, c in terms.items():
                k = tuple(tuple(w) for w in k)
                if len(k) != arity:
                    raise ValueError(f"expected {arity} legs, got {len(k)}")
                c = c if isinstance(c, Scalar) else Scalar.const(c)
                if c:
                    t[k] = c
        self._terms = t
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "Tensor":
        t = object.__new__(cls)
        t.arity = arity
        t._terms = terms
        t._hash = None
        return t

    @classmethod
    def zero(cls, arity: int = 2) -> "Tensor":
        return cls._raw(arity, {})

    @classmethod
    def unit(cls, arity: int = 2) -> "Tensor":
        return cls._raw(arity, {((),) * arity: ONE})

    @classmethod
    def basis(cls, *words: Word, coef=ONE) -> "Tensor":
        coef = coef if isinstance(coef, Scalar) else Scalar.const(coef)
        return cls._raw(len(words), {tuple(tuple(w) for w in words): coef} if coef else {})

    @classmethod
    def from_poly(cls, p: NCPoly) -> "Tensor":
        return cls._raw(1, {(w,): c for w, c in p.items()})

    @classmethod
    def from_product(cls, *polys: NCPoly) -> "Tensor":
        """Elementary tensor p1 (x) p2 (x) ... expanded bilinearly."""
        acc: dict = {(): ONE}
        for p in polys:
            nxt: dict = {}
            for k, c in acc.items():
                for w, d in p.items():
                    nxt[k + (w,)] = c * d
            acc = nxt
        return cls._raw(len(polys), {k: c for k, c in acc.items() if c})

    def extend(self, p: NCPoly) -> "Tensor":
        acc = _Acc()
        for k, c in self._terms.items():
            for w, d in p.items():
                acc.add(k + (w,), c * d)
        return acc.tensor(self.arity + 1)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, *legs: Word) -> Scalar:
        return self._terms.get(tuple(tuple(w) for w in legs), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "Tensor") -> None:
        if not isinstance(other, Tensor):
            raise TypeError(f"expected Tensor, got {type(other).__name__}")
        if other.arity != self.arity and self._terms and other._terms:
            raise ValueError(f"arity mismatch {self.arity} vs {other.arity}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for k, c in other._terms.items():
            v = t.get(k)
            v = c if v is None else v + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return Tensor._raw(self.arity, t)

    def __neg__(self) -> "Tensor":
        return Tensor._raw(self.arity, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, s) -> "Tensor":
        s = s if isinstance(s, Scalar) else Scalar.const(s)
        if s == ONE:
            return self
        t = {}
        for k, c in self._terms.items():
            v = c * s
            if v:
                t[k] = v
        return Tensor._raw(self.arity, t)

    __rmul__ = scale

    def map_coeffs(self, f: Callable[[Scalar], Scalar]) -> "Tensor":
        t = {}
        for k, c in self._terms.items():
            v = f(c)
            if v:
                t[k] = v
        return Tensor._raw(self.arity, t)

    def substitute(self, bindings: Mapping) -> "Tensor":
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def permute(self, order: Sequence[int]) -> "Tensor":
        return Tensor._raw(self.arity, {tuple(k[i] for i in order): c for k, c in self._terms.items()})

    def flip(self) -> "Tensor":
        return self.permute(tuple(range(self.arity - 1, -1, -1)))

    def map_leg(self, i: int, f: Callable[[Word], "NCPoly | Scalar"]) -> "Tensor":
        """Apply a linear map, given on words, to leg ``i``; result stays ``arity``-legged."""
        acc = _Acc()
        cache: dict = {}
        for k, c in self._terms.items():
            w = k[i]
            img = cache.get(w)
            if img is None:
                img = cache[w] = f(w)
            if isinstance(img, Scalar):
                if img:
                    acc.add(k[:i] + ((),) + k[i + 1 :], c * img)
                continue
            for nw, d in img.items():
                acc.add(k[:i] + (nw,) + k[i + 1 :], c * d)
        return acc.tensor(self.arity)

    def expand_leg(self, i: int, f: Callable[[Word], "Tensor"]) -> "Tensor":
        """Apply a map word -> Tensor (arity m) on leg ``i``; result has arity + m - 1 legs."""
        acc = _Acc()
        cache: dict = {}
        m = None
        for k, c in self._terms.items():
            w = k[i]
            img = cache.get(w)
            if img is None:
                img = cache[w] = f(w)
            m = img.arity
            for nk, d in img.items():
                acc.add(k[:i] + nk + k[i + 1 :], c * d)
        if m is None:
            return Tensor.zero(self.arity)
        return acc.tensor(self.arity + m - 1)

    def apply_pair(self, i: int, f: Callable[[Word, Word], "Tensor"]) -> "Tensor":
        """Apply a bilinear map on legs (i, i+1) whose values are tensors."""
        acc = _Acc()
        cache: dict = {}
        m = None
        for k, c in self._terms.items():
            key = (k[i], k[i + 1])
            img = cache.get(key)
            if img is None:
                img = cache[key] = f(*key)
            m = img.arity
            for nk, d in img.items():
                acc.add(k[:i] + nk + k[i + 2 :], c * d)
        if m is None:
            return Tensor.zero(self.arity)
        return acc.tensor(self.arity - 2 + m)

    def contract(self, f: Callable[[tuple], "NCPoly | Scalar"]) -> "NCPoly":
        """Map every basis tensor to an algebra element and sum."""
        from .ncalg import poly_sum

        out: dict = {}
        for k, c in self._terms.items():
            img = f(k)
            if isinstance(img, Scalar):
                img = NCPoly.scalar(img)
            for w, d in img.items():
                v = out.get(w)
                v = c * d if v is None else v + c * d
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPoly._raw(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .textformat import format_tensor

        return f"Tensor({format_tensor(self)!r})"

    def __str__(self) -> str:
        from .textformat import format_tensor

        return format_tensor(self)


class _Acc:
    __slots__ = ("t",)

    def __init__(self):
        self.t: dict = {}

    def add(self, k, c) -> None:
        if not c:
            return
        v = self.t.get(k)
        v = c if v is None else v + c
        if v:
            self.t[k] = v
        else:
            self.t.pop(k, None)

    def tensor(self, arity: int) -> Tensor:
        return Tensor._raw(arity, self.t)


def tensor_sum(items: Iterable[Tensor], arity: int) -> Tensor:
    acc = _Acc()
    for t in items:
        for k, c in t.items():
            acc.add(k, c)
    return acc.tensor(arity)
