"""scikit-learn style front end to the distinguisher."""

from __future__ import annotations

import dataclasses

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .distinguisher import run
from .graph import TwoPartition
from .metrics import modularity_clustering
from .profile import ParamProfile
from .validation import as_graph, check_regular

__all__ = ["ModularityDistinguisher"]


class ModularityDistinguisher(ClusterMixin, BaseEstimator):
    """Two-community clustering of a regular graph with a HIGH/LOW modularity verdict.

    ``X`` is an adjacency matrix (dense, sparse or a :class:`~ssemod.graph.Graph`).
    Parameters mirror :class:`~ssemod.profile.ParamProfile`; defaults are the
    desk preset.

    Attributes
    ----------
    report_ : DistinguisherReport
    decision_ : str
        ``"HIGH"`` or ``"LOW"``.
    labels_ : ndarray of shape (n,)
        0/1 sides of the certificate partition (all zeros if there is none).
    certificate_modularity_ : float or None
    """

    def __init__(
        self,
        eps=0.05,
        tau_case=0.95,
        tau_extract=0.95,
        gamma=0.5,
        size_cap_exponent=0.9,
        extract_phi_budget=0.1,
        phi_slack=0.08,
        size_slack_lo=0.92,
        size_slack_hi=1.08,
        n_exact=20,
        seed=None,
        threads=1,
    ):
        self.eps = eps
        self.tau_case = tau_case
        self.tau_extract = tau_extract
        self.gamma = gamma
        self.size_cap_exponent = size_cap_exponent
        self.extract_phi_budget = extract_phi_budget
        self.phi_slack = phi_slack
        self.size_slack_lo = size_slack_lo
        self.size_slack_hi = size_slack_hi
        self.n_exact = n_exact
        self.seed = seed
        self.threads = threads

    @classmethod
    def from_profile(cls, profile: ParamProfile, **kwargs) -> "ModularityDistinguisher":
        return cls(**profile.to_dict(), **kwargs)

    def get_profile(self) -> ParamProfile:
        names = [f.name for f in dataclasses.fields(ParamProfile)]
        return ParamProfile(**{k: getattr(self, k) for k in names})

    def fit(self, X, y=None):
        g = as_graph(X)
        check_regular(g)
        self.report_ = run(g, self.get_profile(), threads=self.threads)
        self.decision_ = self.report_.decision
        self.n_features_in_ = g.n
        labels = np.zeros(g.n, dtype=np.int64)
        cert = self.report_.certificate
        if cert is not None:
            labels[cert["side_b"]] = 1
        self.labels_ = labels
        self.certificate_modularity_ = None if cert is None else cert["f_value"]
        self._graph = g
        return self

    def score(self, X=None, y=None) -> float:
        """Modularity of the fitted two-community labelling on ``X`` (default: the fitted graph)."""
        check_is_fitted(self, "labels_")
        g = self._graph if X is None else as_graph(X)
        if len(set(self.labels_.tolist())) == 1:
            return 0.0
        side = np.flatnonzero(self.labels_ == 0).tolist()
        return modularity_clustering(g, TwoPartition.from_set(g, side).as_clustering())
