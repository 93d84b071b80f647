"""
quaydeck - quay-crane dual cycling and dockyard rehandle optimization.
"""

__version__ = '1.0.0'
