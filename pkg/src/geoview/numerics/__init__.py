"""Autodiff tensors, optimizer, and checkpoint container."""

from .tensor import (
    Tensor,
    add,
    assert_finite,
    backward,
    cols,
    concat_cols,
    concat_rows,
    matmul,
    mul,
    relu,
    rows,
    scale,
    softmax,
    sub,
    sum_all,
    tanh,
    tensor,
    topo_order,
    transpose,
    zero_grads,
)
from .optim import DecoupledAdam, OptimizerConfig, cosine_lr
from .checkpoint import load_checkpoint, params_doc, restore_params, save_checkpoint

__all__ = [
    "Tensor", "add", "assert_finite", "backward", "cols", "concat_cols",
    "concat_rows", "matmul", "mul", "relu", "rows", "scale", "softmax", "sub",
    "sum_all", "tanh", "tensor", "topo_order", "transpose", "zero_grads",
    "DecoupledAdam", "OptimizerConfig", "cosine_lr",
    "load_checkpoint", "params_doc", "restore_params", "save_checkpoint",
]
