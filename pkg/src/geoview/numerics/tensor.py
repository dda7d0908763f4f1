"""Dense float64 tensors with reverse-mode automatic differentiation.

The graph is dynamic and rebuilt on every forward pass: each operation
returns a new `Tensor` holding references to its parents and a closure
that applies the vector-Jacobian product during the reverse sweep.
`backward` orders the reachable nodes topologically and visits each one
exactly once in reverse.

Broadcasting is deliberately restricted to bias-add (matrix + row vector)
and multiplication by a Python scalar, so every backward rule stays
auditable by hand.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError


class Tensor:
    """Float64 array plus the bookkeeping reverse-mode autodiff needs."""

    __slots__ = ("data", "requires_grad", "grad", "op", "parents", "_vjp")

    def __init__(self, data, requires_grad: bool = False, *, op: str = "leaf",
                 parents: tuple["Tensor", ...] = (), vjp=None):
        self.data = np.asarray(data, dtype=np.float64)
        self.requires_grad = bool(requires_grad)
        self.grad: np.ndarray | None = None
        self.op = op
        self.parents = parents
        self._vjp = vjp

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def size(self) -> int:
        return self.data.size

    def item(self) -> float:
        if self.data.size != 1:
            raise ContractError(f"item() needs a size-1 tensor, got shape {self.shape}")
        return float(self.data.reshape(-1)[0])

    def detach(self) -> np.ndarray:
        return np.array(self.data)

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self.op!r}, requires_grad={self.requires_grad})"


def tensor(data, requires_grad: bool = False) -> Tensor:
    return Tensor(data, requires_grad=requires_grad)


def _accum(t: Tensor, g: np.ndarray) -> None:
    # Grad buffers are never mutated in place, so aliasing the first
    # contribution is safe.
    if not t.requires_grad:
        return
    t.grad = g if t.grad is None else t.grad + g


def _make(data, parents, op, vjp) -> Tensor:
    if any(p.requires_grad for p in parents):
        return Tensor(data, requires_grad=True, op=op, parents=tuple(parents), vjp=vjp)
    return Tensor(data, op=op)


def topo_order(root: Tensor) -> list[Tensor]:
    """Parents-before-children ordering of the graph reachable from root."""
    order: list[Tensor] = []
    visited: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for p in node.parents:
            if id(p) not in visited:
                stack.append((p, False))
    return order


def backward(loss: Tensor) -> None:
    """Populate grads of every reachable requires_grad tensor with d(loss)/d(tensor)."""
    if loss.data.size != 1:
        raise ContractError(f"backward needs a scalar loss, got shape {loss.shape}")
    if not loss.requires_grad:
        raise ContractError("loss does not depend on any tracked tensor")
    order = topo_order(loss)
    loss.grad = np.ones_like(loss.data)
    for node in reversed(order):
        if node._vjp is None or node.grad is None:
            continue
        node._vjp(node.grad)


def zero_grads(params) -> None:
    for t in (params.values() if isinstance(params, dict) else params):
        t.grad = None


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def add(a: Tensor, b) -> Tensor:
    """a + b for same-shape tensors, matrix + bias row, or a + scalar."""
    if isinstance(b, (int, float)):
        def vjp(g):
            _accum(a, g)
        return _make(a.data + float(b), (a,), "add_scalar", vjp)
    if a.shape == b.shape:
        def vjp(g):
            _accum(a, g)
            _accum(b, g)
        return _make(a.data + b.data, (a, b), "add", vjp)
    if a.data.ndim == 2 and b.data.ndim == 1 and a.shape[1] == b.shape[0]:
        def vjp(g):
            _accum(a, g)
            _accum(b, g.sum(axis=0))
        return _make(a.data + b.data, (a, b), "add_bias", vjp)
    raise ContractError(f"add shape mismatch: {a.shape} + {b.shape}")


def sub(a: Tensor, b) -> Tensor:
    if isinstance(b, (int, float)):
        def vjp(g):
            _accum(a, g)
        return _make(a.data - float(b), (a,), "sub_scalar", vjp)
    if a.shape != b.shape:
        raise ContractError(f"sub shape mismatch: {a.shape} - {b.shape}")

    def vjp(g):
        _accum(a, g)
        _accum(b, -g)
    return _make(a.data - b.data, (a, b), "sub", vjp)


def mul(a: Tensor, b) -> Tensor:
    """Elementwise product of same-shape tensors, or a * python scalar."""
    if isinstance(b, (int, float)):
        s = float(b)

        def vjp(g):
            _accum(a, g * s)
        return _make(a.data * s, (a,), "scale", vjp)
    if a.shape != b.shape:
        raise ContractError(f"mul shape mismatch: {a.shape} * {b.shape}")

    def vjp(g):
        _accum(a, g * b.data)
        _accum(b, g * a.data)
    return _make(a.data * b.data, (a, b), "mul", vjp)


def scale(a: Tensor, s: float) -> Tensor:
    return mul(a, float(s))


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.data.ndim != 2 or b.data.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ContractError(f"matmul shape mismatch: {a.shape} @ {b.shape}")

    def vjp(g):
        _accum(a, g @ b.data.T)
        _accum(b, a.data.T @ g)
    return _make(a.data @ b.data, (a, b), "matmul", vjp)


def tanh(a: Tensor) -> Tensor:
    out = np.tanh(a.data)

    def vjp(g):
        _accum(a, (1.0 - out * out) * g)
    return _make(out, (a,), "tanh", vjp)


def relu(a: Tensor) -> Tensor:
    out = np.maximum(a.data, 0.0)

    def vjp(g):
        _accum(a, (a.data > 0.0) * g)
    return _make(out, (a,), "relu", vjp)


def softmax(a: Tensor, axis: int = -1) -> Tensor:
    """Softmax along `axis`, computed with max-subtraction for stability."""
    if not -a.data.ndim <= axis < a.data.ndim:
        raise ContractError(f"softmax axis {axis} invalid for shape {a.shape}")
    shifted = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    out = e / e.sum(axis=axis, keepdims=True)

    def vjp(g):
        inner = (g * out).sum(axis=axis, keepdims=True)
        _accum(a, out * (g - inner))
    return _make(out, (a,), "softmax", vjp)


def sum_all(a: Tensor) -> Tensor:
    def vjp(g):
        _accum(a, g * np.ones_like(a.data))
    return _make(a.data.sum(), (a,), "sum_all", vjp)


def transpose(a: Tensor) -> Tensor:
    if a.data.ndim != 2:
        raise ContractError(f"transpose needs a 2-d tensor, got shape {a.shape}")

    def vjp(g):
        _accum(a, g.T)
    return _make(a.data.T.copy(), (a,), "transpose", vjp)


def cols(a: Tensor, lo: int, hi: int) -> Tensor:
    if a.data.ndim != 2:
        raise ContractError(f"cols needs a 2-d tensor, got shape {a.shape}")
    if not 0 <= lo < hi <= a.shape[1]:
        raise ContractError(f"cols range [{lo}:{hi}] invalid for shape {a.shape}")

    def vjp(g):
        full = np.zeros_like(a.data)
        full[:, lo:hi] = g
        _accum(a, full)
    return _make(a.data[:, lo:hi].copy(), (a,), "cols", vjp)


def rows(a: Tensor, lo: int, hi: int) -> Tensor:
    if a.data.ndim != 2:
        raise ContractError(f"rows needs a 2-d tensor, got shape {a.shape}")
    if not 0 <= lo < hi <= a.shape[0]:
        raise ContractError(f"rows range [{lo}:{hi}] invalid for shape {a.shape}")

    def vjp(g):
        full = np.zeros_like(a.data)
        full[lo:hi, :] = g
        _accum(a, full)
    return _make(a.data[lo:hi, :].copy(), (a,), "rows", vjp)


def concat_cols(parts: list[Tensor]) -> Tensor:
    if not parts:
        raise ContractError("concat_cols needs at least one part")
    n = parts[0].shape[0]
    for p in parts:
        if p.data.ndim != 2 or p.shape[0] != n:
            raise ContractError(f"concat_cols row mismatch: {[p.shape for p in parts]}")
    offsets = np.cumsum([0] + [p.shape[1] for p in parts])

    def vjp(g):
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            _accum(p, g[:, lo:hi])
    return _make(np.concatenate([p.data for p in parts], axis=1), tuple(parts),
                 "concat_cols", vjp)


def concat_rows(parts: list[Tensor]) -> Tensor:
    if not parts:
        raise ContractError("concat_rows needs at least one part")
    m = parts[0].shape[1] if parts[0].data.ndim == 2 else None
    for p in parts:
        if p.data.ndim != 2 or p.shape[1] != m:
            raise ContractError(f"concat_rows column mismatch: {[p.shape for p in parts]}")
    offsets = np.cumsum([0] + [p.shape[0] for p in parts])

    def vjp(g):
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            _accum(p, g[lo:hi, :])
    return _make(np.concatenate([p.data for p in parts], axis=0), tuple(parts),
                 "concat_rows", vjp)


def assert_finite(t: Tensor, label: str = "tensor") -> Tensor:
    if not np.all(np.isfinite(t.data)):
        raise ContractError(f"{label} contains non-finite values")
    return t
