# CoreProbe - sublinear approximate degeneracy and k-core decomposition
"""
CoreProbe estimates the degeneracy and core numbers of large undirected
graphs by sampling neighbors of high-degree nodes, with exact bucket-queue
peeling as fallback and reference.
"""

__version__ = "0.1.0"
__author__ = "CoreProbe Team"
