"""Minimal dense float64 autodiff core: 2-D tensors, reverse mode, MLPs, Adam.

Everything is full precision and deterministic given a seed. Supported
broadcasting is deliberately narrow: (n,m) against (1,m), (n,1) or (1,1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CHECK_FINITE = True


class ShapeError(ValueError):
    pass


class NumericError(ArithmeticError):
    """Raised when an op produces a non-finite value; names the op."""


def _as_array(x) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = a.reshape(1, -1)
    elif a.ndim != 2:
        raise ShapeError(f"tensors are 2-D, got shape {a.shape}")
    return np.ascontiguousarray(a)


def _check(value: np.ndarray, op: str) -> None:
    if CHECK_FINITE and not np.all(np.isfinite(value)):
        raise NumericError(f"non-finite value produced by op '{op}'")


def _unbroadcast(grad: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    """Sum gradient over axes that were broadcast in the forward pass."""
    if grad.shape == shape:
        return grad
    out = grad
    if shape[0] == 1 and grad.shape[0] != 1:
        out = out.sum(axis=0, keepdims=True)
    if shape[1] == 1 and grad.shape[1] != 1:
        out = out.sum(axis=1, keepdims=True)
    if out.shape != shape:
        raise ShapeError(f"cannot reduce grad {grad.shape} to {shape}")
    return out


class Tensor:
    """A 2-D float64 array with reverse-mode gradient accumulation."""

    __slots__ = ("value", "grad", "requires_grad", "_parents", "_backward", "op")

    def __init__(self, value, requires_grad: bool = False, parents=(), backward=None, op: str = "leaf"):
        self.value = _as_array(value)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad or any(p.requires_grad for p in parents)
        self._parents = parents
        self._backward = backward
        self.op = op

    @property
    def shape(self) -> tuple[int, int]:
        return self.value.shape

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self.op})"

    def item(self) -> float:
        if self.value.size != 1:
            raise ShapeError(f"item() on non-scalar tensor of shape {self.shape}")
        return float(self.value[0, 0])

    def _accumulate(self, g: np.ndarray) -> None:
        if self.grad is None:
            self.grad = np.zeros_like(self.value)
        self.grad += g

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self) -> None:
        """Accumulate gradients of this scalar into every reachable parameter."""
        if self.value.size != 1:
            raise ShapeError("backward() requires a scalar loss")
        topo: list[Tensor] = []
        visited: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                topo.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in visited and p.requires_grad:
                    stack.append((p, False))
        self._accumulate(np.ones_like(self.value))
        for node in reversed(topo):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    # -- operator sugar ------------------------------------------------
    def __add__(self, other):
        return add(self, _wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _wrap(other))

    def __rsub__(self, other):
        return sub(_wrap(other), self)

    def __mul__(self, other):
        return mul(self, _wrap(other))

    __rmul__ = __mul__

    def __neg__(self):
        return mul(self, _wrap(-1.0))

    def __truediv__(self, other):
        return div(self, _wrap(other))

    def __matmul__(self, other):
        return matmul(self, _wrap(other))


def _wrap(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def constant(x) -> Tensor:
    return Tensor(x)


def parameter(x) -> Tensor:
    return Tensor(x, requires_grad=True)


def _binary_shapes(a: Tensor, b: Tensor, op: str) -> tuple[int, int]:
    ra, ca = a.shape
    rb, cb = b.shape
    rows = max(ra, rb)
    cols = max(ca, cb)
    if (ra not in (1, rows) or rb not in (1, rows)
            or ca not in (1, cols) or cb not in (1, cols)):
        raise ShapeError(f"{op}: incompatible shapes {a.shape} and {b.shape}")
    return rows, cols


def add(a: Tensor, b: Tensor) -> Tensor:
    _binary_shapes(a, b, "add")
    value = a.value + b.value
    _check(value, "add")

    def backward(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g, a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(g, b.shape))

    return Tensor(value, parents=(a, b), backward=backward, op="add")


def sub(a: Tensor, b: Tensor) -> Tensor:
    _binary_shapes(a, b, "sub")
    value = a.value - b.value
    _check(value, "sub")

    def backward(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g, a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(-g, b.shape))

    return Tensor(value, parents=(a, b), backward=backward, op="sub")


def mul(a: Tensor, b: Tensor) -> Tensor:
    _binary_shapes(a, b, "mul")
    value = a.value * b.value
    _check(value, "mul")

    def backward(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g * b.value, a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(g * a.value, b.shape))

    return Tensor(value, parents=(a, b), backward=backward, op="mul")


def div(a: Tensor, b: Tensor) -> Tensor:
    _binary_shapes(a, b, "div")
    value = a.value / b.value
    _check(value, "div")

    def backward(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g / b.value, a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(-g * a.value / (b.value * b.value), b.shape))

    return Tensor(value, parents=(a, b), backward=backward, op="div")


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul: {a.shape} @ {b.shape}")
    value = a.value @ b.value
    _check(value, "matmul")

    def backward(g):
        if a.requires_grad:
            a._accumulate(g @ b.value.T)
        if b.requires_grad:
            b._accumulate(a.value.T @ g)

    return Tensor(value, parents=(a, b), backward=backward, op="matmul")


def transpose(a: Tensor) -> Tensor:
    value = np.ascontiguousarray(a.value.T)

    def backward(g):
        if a.requires_grad:
            a._accumulate(g.T)

    return Tensor(value, parents=(a,), backward=backward, op="transpose")


def _reduce(a: Tensor, value: np.ndarray, expand, op: str) -> Tensor:
    _check(value, op)

    def backward(g):
        if a.requires_grad:
            a._accumulate(expand(g))

    return Tensor(value, parents=(a,), backward=backward, op=op)


def total_sum(a: Tensor) -> Tensor:
    return _reduce(a, a.value.sum().reshape(1, 1),
                   lambda g: np.broadcast_to(g, a.shape).copy(), "sum")


def mean(a: Tensor) -> Tensor:
    n = a.value.size
    return _reduce(a, a.value.mean().reshape(1, 1),
                   lambda g: np.broadcast_to(g / n, a.shape).copy(), "mean")


def sum_rows(a: Tensor) -> Tensor:
    """Sum over columns: (n,m) -> (n,1)."""
    return _reduce(a, a.value.sum(axis=1, keepdims=True),
                   lambda g: np.broadcast_to(g, a.shape).copy(), "sum_rows")


def sum_cols(a: Tensor) -> Tensor:
    """Sum over rows: (n,m) -> (1,m)."""
    return _reduce(a, a.value.sum(axis=0, keepdims=True),
                   lambda g: np.broadcast_to(g, a.shape).copy(), "sum_cols")


def mean_rows(a: Tensor) -> Tensor:
    """Mean over columns: (n,m) -> (n,1)."""
    m = a.shape[1]
    return _reduce(a, a.value.mean(axis=1, keepdims=True),
                   lambda g: np.broadcast_to(g / m, a.shape).copy(), "mean_rows")


def mean_cols(a: Tensor) -> Tensor:
    """Mean over rows: (n,m) -> (1,m)."""
    n = a.shape[0]
    return _reduce(a, a.value.mean(axis=0, keepdims=True),
                   lambda g: np.broadcast_to(g / n, a.shape).copy(), "mean_cols")


def _unary(a: Tensor, value: np.ndarray, dvalue: np.ndarray, op: str) -> Tensor:
    _check(value, op)

    def backward(g):
        if a.requires_grad:
            a._accumulate(g * dvalue)

    return Tensor(value, parents=(a,), backward=backward, op=op)


def exp(a: Tensor) -> Tensor:
    v = np.exp(a.value)
    return _unary(a, v, v, "exp")


def log(a: Tensor) -> Tensor:
    return _unary(a, np.log(a.value), 1.0 / a.value, "log")


def sqrt(a: Tensor) -> Tensor:
    v = np.sqrt(a.value)
    return _unary(a, v, 0.5 / np.maximum(v, 1e-300), "sqrt")


def square(a: Tensor) -> Tensor:
    return _unary(a, a.value * a.value, 2.0 * a.value, "square")


def absolute(a: Tensor) -> Tensor:
    return _unary(a, np.abs(a.value), np.sign(a.value), "abs")


def leaky_relu(a: Tensor, slope: float = 0.01) -> Tensor:
    mask = a.value > 0
    v = np.where(mask, a.value, slope * a.value)
    return _unary(a, v, np.where(mask, 1.0, slope), "leaky_relu")


def sigmoid(a: Tensor) -> Tensor:
    v = np.empty_like(a.value)
    pos = a.value >= 0
    v[pos] = 1.0 / (1.0 + np.exp(-a.value[pos]))
    ev = np.exp(a.value[~pos])
    v[~pos] = ev / (1.0 + ev)
    return _unary(a, v, v * (1.0 - v), "sigmoid")


def softmax_rows(a: Tensor) -> Tensor:
    shifted = a.value - a.value.max(axis=1, keepdims=True)
    ev = np.exp(shifted)
    v = ev / ev.sum(axis=1, keepdims=True)
    _check(v, "softmax")

    def backward(g):
        if a.requires_grad:
            dot = (g * v).sum(axis=1, keepdims=True)
            a._accumulate(v * (g - dot))

    return Tensor(v, parents=(a,), backward=backward, op="softmax")


def log_softmax_rows(a: Tensor) -> Tensor:
    shifted = a.value - a.value.max(axis=1, keepdims=True)
    lse = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    v = shifted - lse
    _check(v, "log_softmax")
    sm = np.exp(v)

    def backward(g):
        if a.requires_grad:
            a._accumulate(g - sm * g.sum(axis=1, keepdims=True))

    return Tensor(v, parents=(a,), backward=backward, op="log_softmax")


def concat_cols(parts: list[Tensor]) -> Tensor:
    rows = parts[0].shape[0]
    if any(p.shape[0] != rows for p in parts):
        raise ShapeError("concat_cols: row counts differ")
    value = np.concatenate([p.value for p in parts], axis=1)
    offsets = np.cumsum([0] + [p.shape[1] for p in parts])

    def backward(g):
        for p, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            if p.requires_grad:
                p._accumulate(g[:, lo:hi])

    return Tensor(value, parents=tuple(parts), backward=backward, op="concat_cols")


def slice_cols(a: Tensor, start: int, stop: int) -> Tensor:
    value = a.value[:, start:stop].copy()

    def backward(g):
        if a.requires_grad:
            full = np.zeros_like(a.value)
            full[:, start:stop] = g
            a._accumulate(full)

    return Tensor(value, parents=(a,), backward=backward, op="slice_cols")


def take_rows(a: Tensor, idx: np.ndarray) -> Tensor:
    idx = np.asarray(idx, dtype=np.intp)
    value = a.value[idx]

    def backward(g):
        if a.requires_grad:
            full = np.zeros_like(a.value)
            np.add.at(full, idx, g)
            a._accumulate(full)

    return Tensor(value, parents=(a,), backward=backward, op="take_rows")


def gradients(loss: Tensor, params: list[Tensor]) -> list[np.ndarray]:
    """Zero, backprop, and return a fresh gradient array per parameter."""
    for p in params:
        p.zero_grad()
    loss.backward()
    return [np.zeros_like(p.value) if p.grad is None else p.grad.copy() for p in params]


# -- composite helpers used by the losses ------------------------------

def mse(pred: Tensor, target: Tensor) -> Tensor:
    return mean(square(sub(pred, target)))


def binary_cross_entropy(prob: Tensor, target: Tensor, eps: float = 1e-12) -> Tensor:
    p = add(mul(prob, _wrap(1.0 - 2.0 * eps)), _wrap(eps))  # keep log args in (0,1)
    one = _wrap(1.0)
    return mean(sub(_wrap(0.0), add(mul(target, log(p)), mul(sub(one, target), log(sub(one, p))))))


def pairwise_sqdist(a: Tensor, b: Tensor) -> Tensor:
    """Squared Euclidean distances between rows of a (n,d) and b (m,d)."""
    aa = sum_rows(square(a))                       # (n,1)
    bb = transpose(sum_rows(square(b)))            # (1,m)
    cross = matmul(a, transpose(b))                # (n,m)
    return add(sub(aa, mul(cross, _wrap(2.0))), bb)


def rbf_mmd(a: Tensor, b: Tensor, bandwidth: float) -> Tensor:
    """Biased (V-statistic) RBF-kernel MMD between row samples a and b."""
    scale = _wrap(-0.5 / (bandwidth * bandwidth))
    kaa = mean(exp(mul(pairwise_sqdist(a, a), scale)))
    kbb = mean(exp(mul(pairwise_sqdist(b, b), scale)))
    kab = mean(exp(mul(pairwise_sqdist(a, b), scale)))
    return sub(add(kaa, kbb), mul(kab, _wrap(2.0)))


def cosine_distance_rows(a: Tensor, b: Tensor, eps: float = 1e-12) -> Tensor:
    """Row-wise 1 - cosine similarity, shape (n,1). Zero-norm rows give 1."""
    dot = sum_rows(mul(a, b))
    na = sqrt(add(sum_rows(square(a)), _wrap(eps)))
    nb = sqrt(add(sum_rows(square(b)), _wrap(eps)))
    return sub(_wrap(1.0), div(dot, mul(na, nb)))


# -- MLP ----------------------------------------------------------------

OUTPUT_ACTIVATIONS = ("identity", "sigmoid", "softmax")


class Mlp:
    """Two fully connected layers with LeakyReLU on the hidden layer."""

    def __init__(self, dims: tuple[int, int, int], rng: np.random.Generator,
                 output_activation: str = "identity", slope: float = 0.01):
        if output_activation not in OUTPUT_ACTIVATIONS:
            raise ValueError(f"unknown output activation {output_activation!r}")
        if not 0.0 < slope < 1.0:
            raise ValueError("LeakyReLU slope must be in (0,1)")
        d_in, d_hid, d_out = dims
        self.dims = (d_in, d_hid, d_out)
        self.slope = slope
        self.output_activation = output_activation
        self.weights = [
            parameter(rng.normal(0.0, np.sqrt(2.0 / d_in), size=(d_in, d_hid))),
            parameter(rng.normal(0.0, np.sqrt(2.0 / d_hid), size=(d_hid, d_out))),
        ]
        self.biases = [
            parameter(np.zeros((1, d_hid))),
            parameter(np.zeros((1, d_out))),
        ]

    def params(self) -> list[Tensor]:
        return [*self.weights, *self.biases]

    def forward(self, x: Tensor) -> Tensor:
        if x.shape[1] != self.dims[0]:
            raise ShapeError(f"expected {self.dims[0]} input columns, got {x.shape[1]}")
        h = leaky_relu(add(matmul(x, self.weights[0]), self.biases[0]), self.slope)
        out = add(matmul(h, self.weights[1]), self.biases[1])
        if self.output_activation == "sigmoid":
            out = sigmoid(out)
        elif self.output_activation == "softmax":
            out = softmax_rows(out)
        return out

    def __call__(self, x: Tensor) -> Tensor:
        return self.forward(x)

    def state(self) -> dict:
        return {
            "dims": list(self.dims),
            "slope": self.slope,
            "output_activation": self.output_activation,
            "weights": [w.value.tolist() for w in self.weights],
            "biases": [b.value.tolist() for b in self.biases],
        }

    @classmethod
    def from_state(cls, state: dict) -> "Mlp":
        mlp = cls(tuple(state["dims"]), np.random.default_rng(0),
                  output_activation=state["output_activation"], slope=state["slope"])
        for w, saved in zip(mlp.weights, state["weights"]):
            w.value = _as_array(saved)
        for b, saved in zip(mlp.biases, state["biases"]):
            b.value = _as_array(saved)
        return mlp


def mlp_forward(mlp: Mlp, x: np.ndarray) -> np.ndarray:
    """Plain-array forward pass."""
    return mlp.forward(constant(x)).value


# -- Adam ---------------------------------------------------------------

@dataclass
class AdamState:
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    step_count: int = 0
    first_moment: list = field(default_factory=list)
    second_moment: list = field(default_factory=list)


def adam_step(params: list[np.ndarray], grads: list[np.ndarray], state: AdamState) -> list[np.ndarray]:
    """One bias-corrected Adam update; returns new parameter arrays."""
    if len(params) != len(grads):
        raise ShapeError("params/grads length mismatch")
    if not state.first_moment:
        state.first_moment = [np.zeros_like(p) for p in params]
        state.second_moment = [np.zeros_like(p) for p in params]
    state.step_count += 1
    t = state.step_count
    b1, b2 = state.beta1, state.beta2
    out = []
    for p, g, m, v in zip(params, grads, state.first_moment, state.second_moment):
        if p.shape != g.shape:
            raise ShapeError(f"grad shape {g.shape} != param shape {p.shape}")
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * g * g
        m_hat = m / (1.0 - b1 ** t)
        v_hat = v / (1.0 - b2 ** t)
        out.append(p - state.lr * m_hat / (np.sqrt(v_hat) + state.epsilon))
    return out


class Adam:
    """In-place Adam over a list of parameter Tensors."""

    def __init__(self, params: list[Tensor], lr: float = 1e-3,
                 beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8):
        self.params = params
        self.state = AdamState(lr=lr, beta1=beta1, beta2=beta2, epsilon=epsilon)

    def step(self, loss: Tensor) -> None:
        grads = gradients(loss, self.params)
        new_values = adam_step([p.value for p in self.params], grads, self.state)
        for p, v in zip(self.params, new_values):
            p.value = v
