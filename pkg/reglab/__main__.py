"""Run reglab as a module."""

from .cli import main

main()
