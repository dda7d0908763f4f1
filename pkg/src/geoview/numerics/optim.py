"""Stochastic gradient optimizer with decoupled weight decay and a cosine
learning-rate schedule decaying from the base rate to zero."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor import Tensor


def cosine_lr(step: int, total_steps: int, base_lr: float) -> float:
    """Learning rate at `step`: base_lr at 0, 0 at total_steps and beyond."""
    if total_steps <= 0:
        return base_lr
    frac = min(max(step, 0), total_steps) / total_steps
    return base_lr * 0.5 * (1.0 + math.cos(math.pi * frac))


@dataclass(frozen=True)
class OptimizerConfig:
    base_lr: float = 1e-3
    weight_decay: float = 0.01
    betas: tuple[float, float] = (0.9, 0.999)
    eps: float = 1e-8
    total_steps: int = 0  # 0 disables the schedule (constant lr)


class DecoupledAdam:
    """Adam moments plus weight decay applied directly to the parameters,
    not through the gradient."""

    def __init__(self, params: dict[str, Tensor], cfg: OptimizerConfig):
        self.params = params
        self.cfg = cfg
        self.m = {k: np.zeros_like(t.data) for k, t in params.items()}
        self.v = {k: np.zeros_like(t.data) for k, t in params.items()}
        self.step_count = 0
        self.skipped_grads = 0

    def current_lr(self) -> float:
        return cosine_lr(self.step_count, self.cfg.total_steps, self.cfg.base_lr)

    def step(self) -> None:
        lr = self.current_lr()
        b1, b2 = self.cfg.betas
        t = self.step_count + 1
        bc1 = 1.0 - b1 ** t
        bc2 = 1.0 - b2 ** t
        for name, p in self.params.items():
            if p.grad is None:
                self.skipped_grads += 1
                continue
            g = p.grad
            m = self.m[name]
            v = self.v[name]
            m *= b1
            m += (1.0 - b1) * g
            v *= b2
            v += (1.0 - b2) * (g * g)
            m_hat = m / bc1
            v_hat = v / bc2
            p.data = p.data - lr * (m_hat / (np.sqrt(v_hat) + self.cfg.eps)
                                    + self.cfg.weight_decay * p.data)
        self.step_count += 1

    def state(self) -> dict:
        return {
            "step_count": self.step_count,
            "skipped_grads": self.skipped_grads,
            "base_lr": self.cfg.base_lr,
            "weight_decay": self.cfg.weight_decay,
            "betas": list(self.cfg.betas),
            "eps": self.cfg.eps,
            "total_steps": self.cfg.total_steps,
            "m": {k: a.tolist() for k, a in self.m.items()},
            "v": {k: a.tolist() for k, a in self.v.items()},
        }

    @classmethod
    def from_state(cls, params: dict[str, Tensor], state: dict) -> "DecoupledAdam":
        cfg = OptimizerConfig(
            base_lr=state["base_lr"],
            weight_decay=state["weight_decay"],
            betas=tuple(state["betas"]),
            eps=state["eps"],
            total_steps=state["total_steps"],
        )
        opt = cls(params, cfg)
        opt.step_count = state["step_count"]
        opt.skipped_grads = state.get("skipped_grads", 0)
        for k in params:
            opt.m[k] = np.asarray(state["m"][k], dtype=np.float64).reshape(params[k].shape)
            opt.v[k] = np.asarray(state["v"][k], dtype=np.float64).reshape(params[k].shape)
        return opt
