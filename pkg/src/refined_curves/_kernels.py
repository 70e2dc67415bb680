"""Kernel selection: compiled extension when built, pure Python otherwise."""

try:
    from refined_curves._conv_cy import conv_lists, dict_mul

    KERNEL_BACKEND = "cython"
except ImportError:
    from refined_curves._conv_py import conv_lists, dict_mul

    KERNEL_BACKEND = "python"

__all__ = ["conv_lists", "dict_mul", "KERNEL_BACKEND"]
