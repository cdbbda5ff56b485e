"""Advice-complexity workbench for delayed online F-node and H-edge deletion."""

__version__ = "0.1.0"
