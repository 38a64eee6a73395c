"""Ultragraph Leavitt path algebras: ideals, normal forms, Chen modules and isotropy."""

__version__ = "0.1.0"
