"""Two-stage robust optimization via exact and inexact column-and-constraint
generation, with a built-in LP/MILP engine and an operating-room scheduling
application."""

__version__ = "0.1.0"
