"""scikit-learn style wrappers around certification and cut search.

Both estimators take a :class:`~hardcut.graph.Multigraph` (or, for the cut
search, an already built :class:`~hardcut.handlebody.HandlebodyModel`) as
``X``, keep their hyper-parameters untouched in ``__init__`` and expose
fitted state through trailing-underscore attributes, so ``get_params`` /
``set_params`` / ``clone`` behave as usual.
"""

from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .cutsearch import find_cut
from .graph import ENUMERATION_LIMIT, exact_expansion, spectral_expansion_bound
from .handlebody import (
    DEFAULT_EPSILON,
    HandlebodyModel,
    build_model,
    default_scale,
    model_lower_bound,
    normalize,
)
from .validation import check_graph


class ExpansionCertifier(BaseEstimator):
    """Certify the edge expansion of a graph.

    Parameters
    ----------
    mode : {"auto", "exact", "spectral"}, default="auto"
        ``auto`` enumerates subsets up to ``ENUMERATION_LIMIT`` vertices and
        falls back to the spectral Cheeger bound beyond.

    Attributes
    ----------
    certificate_ : ExpansionCertificate
    constant_ : float
    """

    def __init__(self, mode="auto"):
        self.mode = mode

    def fit(self, X, y=None):
        graph = check_graph(X)
        mode = self.mode
        if mode == "auto":
            mode = "exact" if graph.vertex_count <= ENUMERATION_LIMIT else "spectral"
        if mode == "exact":
            self.certificate_ = exact_expansion(graph)
        elif mode == "spectral":
            self.certificate_ = spectral_expansion_bound(graph)
        else:
            raise ValueError(f"mode must be 'auto', 'exact' or 'spectral', got {self.mode!r}")
        self.constant_ = self.certificate_.constant
        return self


class BalancedCutSearch(ClusterMixin, BaseEstimator):
    """Minimum-area balanced cut of a thickened 3-regular graph.

    Parameters
    ----------
    n : int or None, default=None
        Model scale; ``None`` uses the integer nearest the cube root of the
        vertex count.  Ignored when ``X`` is already a model.
    epsilon : float, default=0.009
        Both sides must hold more than ``epsilon * m`` cells.
    method : {"exact", "spectral", "local", "random"}, default="random"
    restarts : int, default=50
    random_state : int, default=0
    sphere : bool, default=False
        Search the doubled sphere instead: epsilon is halved and the model is
        rescaled to unit sphere volume.

    Attributes
    ----------
    model_ : HandlebodyModel
    result_ : CutResult
    labels_ : ndarray of shape (m,)
        1 for cells on the smaller side, 0 otherwise.
    area_, theorem_bound_, ratio_ : float
    """

    def __init__(self, n=None, epsilon=DEFAULT_EPSILON, method="random", restarts=50,
                 random_state=0, sphere=False):
        self.n = n
        self.epsilon = epsilon
        self.method = method
        self.restarts = restarts
        self.random_state = random_state
        self.sphere = sphere

    def fit(self, X, y=None):
        if isinstance(X, HandlebodyModel):
            model = X
        else:
            graph = check_graph(X, degree=3, connected=True)
            model = build_model(graph, self.n or default_scale(graph.vertex_count))
        eps = self.epsilon
        if self.sphere:
            eps = eps / 2.0
            model = normalize(model, 1.0, reference="sphere")
        self.model_ = model
        self.epsilon_ = eps
        self.result_ = find_cut(model, eps, self.method, self.restarts, self.random_state)
        self.labels_ = self.result_.cut.membership.astype(int)
        self.area_ = self.result_.area
        self.theorem_bound_ = model_lower_bound(model, eps)
        self.ratio_ = self.area_ / self.theorem_bound_
        return self

    def score(self, X=None, y=None):
        """Negative cut area of the fitted cut (higher is better)."""
        check_is_fitted(self, "result_")
        return -self.area_
