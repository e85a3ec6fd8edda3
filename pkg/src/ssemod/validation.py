"""Input checks for adjacency-matrix inputs."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .errors import NotRegularError
from .graph import Graph, is_regular

__all__ = ["check_adjacency", "as_graph", "check_regular"]


def check_adjacency(X) -> np.ndarray:
    """Validate a simple undirected adjacency matrix and return it as a dense int array.

    Accepts array-likes and scipy sparse matrices. The matrix must be square,
    symmetric, 0/1 valued and have a zero diagonal.
    """
    if sp.issparse(X):
        X = X.toarray()
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    if A.shape[0] == 0:
        raise ValueError("adjacency matrix is empty")
    if not np.all(np.isin(A, (0, 1))):
        raise ValueError("adjacency matrix entries must be 0 or 1")
    A = A.astype(np.int64)
    if np.any(np.diag(A)):
        raise ValueError("adjacency matrix has self-loops")
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix is not symmetric")
    return A


def as_graph(X) -> Graph:
    if isinstance(X, Graph):
        return X
    A = check_adjacency(X)
    u, v = np.nonzero(np.triu(A, 1))
    return Graph(A.shape[0], zip(u.tolist(), v.tolist()))


def check_regular(g: Graph) -> int:
    d = is_regular(g)
    if d is None:
        raise NotRegularError(f"graph is not regular (degrees range {min(g.degrees)}..{max(g.degrees)})")
    return d
