"""Structural causal model engine: DAG validation, ancestral sampling,
linear-Gaussian fitting, exact-posterior abduction, and counterfactuals.

Mechanisms are linear-Gaussian (optionally with per-sensitive-value
parameters) over categorical or Gaussian roots. Latent nodes carry a
standard-normal marginal and enter children with unit coefficient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

TAGS = ("observed", "latent", "sensitive", "target")


class ScmValidationError(ValueError):
    pass


class FitError(RuntimeError):
    pass


@dataclass
class CausalGraph:
    """Directed acyclic graph over tagged nodes."""

    nodes: dict[str, str]                 # name -> tag
    edges: list[tuple[str, str]]          # (parent, child)

    def parents(self, node: str) -> list[str]:
        return [p for p, c in self.edges if c == node]

    def children(self, node: str) -> list[str]:
        return [c for p, c in self.edges if p == node]

    def sensitive(self) -> str:
        names = [n for n, t in self.nodes.items() if t == "sensitive"]
        if len(names) != 1:
            raise ScmValidationError(f"expected exactly one sensitive node, found {names}")
        return names[0]

    def target(self) -> str:
        names = [n for n, t in self.nodes.items() if t == "target"]
        if len(names) != 1:
            raise ScmValidationError(f"expected exactly one target node, found {names}")
        return names[0]

    def latents(self) -> list[str]:
        return [n for n, t in self.nodes.items() if t == "latent"]

    def feature_nodes(self) -> list[str]:
        return [n for n, t in self.nodes.items() if t == "observed"]

    def topological_order(self) -> list[str]:
        indeg = {n: 0 for n in self.nodes}
        for p, c in self.edges:
            if p not in self.nodes or c not in self.nodes:
                raise ScmValidationError(f"edge ({p},{c}) references unknown node")
            indeg[c] += 1
        ready = sorted(n for n, d in indeg.items() if d == 0)
        order = []
        while ready:
            n = ready.pop(0)
            order.append(n)
            for c in sorted(self.children(n)):
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
            ready.sort()
        if len(order) != len(self.nodes):
            stuck = sorted(set(self.nodes) - set(order))
            raise ScmValidationError(f"cycle detected involving {stuck}")
        return order

    def descendants(self, node: str) -> set[str]:
        out: set[str] = set()
        frontier = [node]
        while frontier:
            n = frontier.pop()
            for c in self.children(n):
                if c not in out:
                    out.add(c)
                    frontier.append(c)
        return out


@dataclass
class Mechanism:
    """Assignment of one node from its parents plus exogenous noise.

    kind: 'categorical_root' uses probs; 'gaussian_root' uses intercept and
    noise_std; 'linear_gaussian' / 'linear_gaussian_by_s' use coeffs per
    parent, intercept, and noise_std, the by-s variant holding one value per
    sensitive level for any of them. A sensitive parent contributes
    coeff * numeric(s).
    """

    kind: str
    probs: np.ndarray | None = None
    coeffs: dict = field(default_factory=dict)   # parent -> float | array per s
    intercept: float | np.ndarray = 0.0
    noise_std: float | np.ndarray = 1.0

    def param_at(self, value, s: np.ndarray | int):
        if np.ndim(value) == 0:
            return value if np.isscalar(s) or np.ndim(s) == 0 else np.full(np.shape(s), float(value))
        return np.asarray(value)[s]

    def n_levels(self) -> int:
        if self.kind != "categorical_root":
            raise ScmValidationError("n_levels on non-categorical mechanism")
        return len(self.probs)


@dataclass
class Scm:
    graph: CausalGraph
    mechanisms: dict[str, Mechanism]

    def to_json(self) -> str:
        def mech_dict(m: Mechanism):
            d = {"kind": m.kind}
            if m.probs is not None:
                d["probs"] = np.asarray(m.probs).tolist()
            if m.coeffs:
                d["coeffs"] = {k: np.asarray(v).tolist() if np.ndim(v) else float(v)
                               for k, v in m.coeffs.items()}
            d["intercept"] = np.asarray(m.intercept).tolist() if np.ndim(m.intercept) else float(m.intercept)
            d["noise_std"] = np.asarray(m.noise_std).tolist() if np.ndim(m.noise_std) else float(m.noise_std)
            return d

        return json.dumps({
            "nodes": [{"name": n, "tag": t} for n, t in self.graph.nodes.items()],
            "edges": [[p, c] for p, c in self.graph.edges],
            "mechanisms": {n: mech_dict(m) for n, m in self.mechanisms.items()},
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Scm":
        doc = json.loads(text)
        graph = CausalGraph(
            nodes={d["name"]: d["tag"] for d in doc["nodes"]},
            edges=[tuple(e) for e in doc["edges"]],
        )
        mechs = {}
        for name, d in doc.get("mechanisms", {}).items():
            mechs[name] = Mechanism(
                kind=d["kind"],
                probs=np.asarray(d["probs"]) if "probs" in d else None,
                coeffs={k: (np.asarray(v) if isinstance(v, list) else float(v))
                        for k, v in d.get("coeffs", {}).items()},
                intercept=np.asarray(d["intercept"]) if isinstance(d["intercept"], list) else float(d["intercept"]),
                noise_std=np.asarray(d["noise_std"]) if isinstance(d["noise_std"], list) else float(d["noise_std"]),
            )
        return cls(graph=graph, mechanisms=mechs)


@dataclass
class Dataset:
    """Column-oriented table: features X, sensitive s, target y."""

    feature_names: list[str]
    X: np.ndarray          # (n, d) float64
    s: np.ndarray          # (n,) int
    y: np.ndarray          # (n,) float64
    task: str = "regression"

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        self.s = np.asarray(self.s, dtype=np.intp)
        self.y = np.asarray(self.y, dtype=np.float64)
        n = self.X.shape[0]
        if not (len(self.s) == n == len(self.y)):
            raise ValueError("inconsistent column lengths")
        if self.X.shape[1] != len(self.feature_names):
            raise ValueError("feature_names does not match X columns")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def n_sensitive(self) -> int:
        return int(self.s.max()) + 1 if len(self.s) else 0

    def subset(self, idx: np.ndarray) -> "Dataset":
        return Dataset(self.feature_names, self.X[idx], self.s[idx], self.y[idx], self.task)


def validate(scm: Scm) -> None:
    """Raise ScmValidationError unless the model is well formed."""
    g = scm.graph
    for n, t in g.nodes.items():
        if t not in TAGS:
            raise ScmValidationError(f"node {n} has unknown tag {t}")
    g.topological_order()
    sens = g.sensitive()
    g.target()
    if g.parents(sens):
        raise ScmValidationError(f"sensitive node {sens} must have no parents")
    for n in g.nodes:
        if n not in scm.mechanisms:
            raise ScmValidationError(f"node {n} lacks a mechanism")
    for n in scm.mechanisms:
        if n not in g.nodes:
            raise ScmValidationError(f"mechanism for unknown node {n}")
    for n, m in scm.mechanisms.items():
        parents = set(g.parents(n))
        if m.kind == "categorical_root":
            if parents:
                raise ScmValidationError(f"categorical root {n} has parents")
            p = np.asarray(m.probs, dtype=float)
            if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
                raise ScmValidationError(f"probabilities of {n} must be nonnegative and sum to 1")
        elif m.kind == "gaussian_root":
            if parents:
                raise ScmValidationError(f"gaussian root {n} has parents")
            if np.any(np.asarray(m.noise_std) < 0):
                raise ScmValidationError(f"noise std of {n} must be nonnegative")
        elif m.kind in ("linear_gaussian", "linear_gaussian_by_s"):
            if set(m.coeffs) != parents:
                raise ScmValidationError(
                    f"mechanism parents {sorted(m.coeffs)} of {n} do not match graph parents {sorted(parents)}")
            if np.any(np.asarray(m.noise_std) < 0):
                raise ScmValidationError(f"noise std of {n} must be nonnegative")
        else:
            raise ScmValidationError(f"unknown mechanism kind {m.kind} for {n}")
    for latent in g.latents():
        if g.parents(latent):
            raise ScmValidationError(f"latent node {latent} must be a root")


def sample(scm: Scm, n: int, seed: int) -> tuple[Dataset, dict[str, np.ndarray]]:
    """Ancestral sampling; also returns every node value and noise draw."""
    validate(scm)
    rng = np.random.default_rng(seed)
    g = scm.graph
    sens = g.sensitive()
    values: dict[str, np.ndarray] = {}
    noises: dict[str, np.ndarray] = {}
    for node in g.topological_order():
        m = scm.mechanisms[node]
        if m.kind == "categorical_root":
            values[node] = rng.choice(len(m.probs), size=n, p=np.asarray(m.probs, dtype=float))
        elif m.kind == "gaussian_root":
            eps = rng.normal(0.0, 1.0, n)
            noises[node] = eps
            values[node] = m.param_at(m.intercept, 0) + m.param_at(m.noise_std, 0) * eps
        else:
            s = values[sens] if sens in values else np.zeros(n, dtype=np.intp)
            loc = m.param_at(m.intercept, s) * np.ones(n)
            for parent, coeff in m.coeffs.items():
                c = m.param_at(coeff, s)
                pv = values[parent]
                if parent == sens:
                    pv = pv.astype(np.float64)
                loc = loc + c * pv
            eps = rng.normal(0.0, 1.0, n)
            noises[node] = eps
            values[node] = loc + m.param_at(m.noise_std, s) * eps
    for latent in g.latents():
        noises.setdefault(latent, values[latent])
    record = dict(values)
    record.update({f"eps_{k}": v for k, v in noises.items()})
    feats = g.feature_nodes()
    dataset = Dataset(
        feature_names=feats,
        X=np.column_stack([values[f] for f in feats]) if feats else np.zeros((n, 0)),
        s=values[sens].astype(np.intp),
        y=values[g.target()],
    )
    return dataset, record


def node_values(dataset: Dataset, scm: Scm) -> dict[str, np.ndarray]:
    """Map a Dataset's columns back onto graph node names."""
    g = scm.graph
    out = {name: dataset.X[:, i] for i, name in enumerate(dataset.feature_names)}
    out[g.sensitive()] = dataset.s
    out[g.target()] = dataset.y
    return out


# -- joint linear-Gaussian representation --------------------------------

def _linear_rep(scm: Scm, s_value: int):
    """Mean and noise loadings of every continuous node at fixed s.

    Returns (names, mu, load) with load[i, j] the coefficient of noise j
    (one unit-variance source per continuous node, scaled by its std).
    """
    g = scm.graph
    sens = g.sensitive()
    cont = [n for n in g.topological_order() if n != sens]
    index = {n: i for i, n in enumerate(cont)}
    k = len(cont)
    mu = np.zeros(k)
    load = np.zeros((k, k))
    for node in cont:
        i = index[node]
        m = scm.mechanisms[node]
        if m.kind == "gaussian_root":
            mu[i] = float(m.param_at(m.intercept, s_value))
            load[i, i] = float(m.param_at(m.noise_std, s_value))
            continue
        mu[i] = float(m.param_at(m.intercept, s_value))
        for parent, coeff in m.coeffs.items():
            c = float(m.param_at(coeff, s_value))
            if parent == sens:
                mu[i] += c * float(s_value)
            else:
                j = index[parent]
                mu[i] += c * mu[j]
                load[i] += c * load[j]
        load[i, i] += float(m.param_at(m.noise_std, s_value))
    return cont, mu, load


def latent_posterior(scm: Scm, obs: dict[str, np.ndarray], s_value: int,
                     conditioned: list[str]):
    """Exact Gaussian posterior of the latent nodes given conditioned nodes.

    obs maps node name -> (n,) values. Returns (mean (n, L), cov (L, L)).
    """
    g = scm.graph
    lats = g.latents()
    names, mu, load = _linear_rep(scm, s_value)
    idx = {n: i for i, n in enumerate(names)}
    li = [idx[l] for l in lats]
    oi = [idx[o] for o in conditioned]
    cov = load @ load.T
    n = len(next(iter(obs.values()))) if obs else 1
    if not li:
        return np.zeros((n, 0)), np.zeros((0, 0))
    if not oi:
        return np.tile(mu[li], (n, 1)), cov[np.ix_(li, li)]
    sig_lo = cov[np.ix_(li, oi)]
    sig_oo = cov[np.ix_(oi, oi)]
    sig_ll = cov[np.ix_(li, li)]
    gain = sig_lo @ np.linalg.pinv(sig_oo)
    resid = np.column_stack([obs[names[i]] for i in oi]) - mu[oi]
    mean = mu[li] + resid @ gain.T
    post_cov = sig_ll - gain @ sig_lo.T
    post_cov = 0.5 * (post_cov + post_cov.T)
    return mean, post_cov


def _psd_factor(cov: np.ndarray) -> np.ndarray:
    if cov.size == 0:
        return cov
    w, v = np.linalg.eigh(cov)
    w = np.clip(w, 0.0, None)
    return v * np.sqrt(w)


def counterfactual_batch(scm: Scm, obs: dict[str, np.ndarray], s: np.ndarray,
                         s_new: int, n_samples: int = 500, seed: int = 0) -> dict[str, np.ndarray]:
    """Abduction-action-prediction for every row; mean over posterior draws.

    obs maps every non-sensitive, non-latent node name to its observed
    values. Noise of observed nodes is recovered as the additive residual;
    latents are drawn from their exact posterior given all observed nodes.
    """
    validate(scm)
    g = scm.graph
    sens = g.sensitive()
    if scm.mechanisms[sens].kind != "categorical_root":
        raise ScmValidationError("counterfactuals require a categorical sensitive node")
    if not 0 <= s_new < scm.mechanisms[sens].n_levels():
        raise ValueError(f"s_new={s_new} outside sensitive range")
    lats = g.latents()
    observed_nodes = [n for n in g.topological_order() if n != sens and n not in lats]
    n = len(s)
    rng = np.random.default_rng(seed)
    out = {name: np.zeros(n) for name in observed_nodes}
    for s_val in np.unique(s):
        rows = np.where(s == s_val)[0]
        group = {k: np.asarray(v)[rows] for k, v in obs.items()}
        mean, cov = latent_posterior(scm, group, int(s_val), observed_nodes)
        L = len(lats)
        if L:
            factor = _psd_factor(cov)
            z = rng.standard_normal((len(rows), n_samples, L))
            draws = mean[:, None, :] + z @ factor.T
        else:
            draws = np.zeros((len(rows), max(n_samples, 1), 0))
        values = {lat: draws[:, :, i] for i, lat in enumerate(lats)}
        # abduction: residual noise of each observed node under the factual s
        resid = {}
        for node in observed_nodes:
            m = scm.mechanisms[node]
            loc = float(m.param_at(m.intercept, int(s_val))) * np.ones(draws.shape[:2])
            for parent, coeff in m.coeffs.items():
                c = float(m.param_at(coeff, int(s_val)))
                if parent == sens:
                    loc = loc + c * float(s_val)
                elif parent in lats:
                    loc = loc + c * values[parent]
                else:
                    loc = loc + c * group[parent][:, None]
            resid[node] = group[node][:, None] - loc
        # action + prediction under s_new with the abducted noise
        cf = {}
        for node in observed_nodes:
            m = scm.mechanisms[node]
            loc = float(m.param_at(m.intercept, s_new)) * np.ones(draws.shape[:2])
            for parent, coeff in m.coeffs.items():
                c = float(m.param_at(coeff, s_new))
                if parent == sens:
                    loc = loc + c * float(s_new)
                elif parent in lats:
                    loc = loc + c * values[parent]
                else:
                    loc = loc + c * cf[parent]
            cf[node] = loc + resid[node]
        for node in observed_nodes:
            out[node][rows] = cf[node].mean(axis=1)
    return out


def counterfactual(scm: Scm, x: np.ndarray, s: int, y: float, s_new: int,
                   n_samples: int = 500, seed: int = 0) -> tuple[np.ndarray, float]:
    """Single-instance counterfactual (x_cf, y_cf)."""
    g = scm.graph
    feats = g.feature_nodes()
    obs = {f: np.asarray([x[i]], dtype=float) for i, f in enumerate(feats)}
    obs[g.target()] = np.asarray([y], dtype=float)
    cf = counterfactual_batch(scm, obs, np.asarray([s]), s_new, n_samples, seed)
    return np.array([cf[f][0] for f in feats]), float(cf[g.target()][0])


def counterfactual_dataset(scm: Scm, data: Dataset, s_new: int,
                           n_samples: int = 500, seed: int = 0) -> Dataset:
    """Counterfactual version of a whole Dataset under S <- s_new."""
    obs = node_values(data, scm)
    sens = scm.graph.sensitive()
    obs = {k: v for k, v in obs.items() if k != sens}
    cf = counterfactual_batch(scm, obs, data.s, s_new, n_samples, seed)
    X = np.column_stack([cf[f] for f in data.feature_names]) if data.feature_names else np.zeros((data.n, 0))
    return Dataset(data.feature_names, X, np.full(data.n, s_new, dtype=np.intp),
                   cf[scm.graph.target()], data.task)


# -- fitting --------------------------------------------------------------

def _fit_node(node: str, parents: list[str], values: dict[str, np.ndarray],
              sens: str, latents: list[str], n_levels: int) -> Mechanism:
    obs_parents = [p for p in parents if p != sens and p not in latents]
    lat_parents = [p for p in parents if p in latents]
    v = values[node]

    def ols_fit(rows: np.ndarray):
        A = np.column_stack([values[p][rows] for p in obs_parents] + [np.ones(rows.sum())])
        gram = A.T @ A
        if np.linalg.matrix_rank(gram) < A.shape[1]:
            raise FitError(f"singular design matrix fitting {node}")
        coef = np.linalg.solve(gram, A.T @ v[rows])
        resid = v[rows] - A @ coef
        var = float(np.var(resid)) - float(len(lat_parents))
        return coef[:-1], float(coef[-1]), float(np.sqrt(max(var, 1e-12)))

    if sens in parents:
        coefs = {p: np.zeros(n_levels) for p in obs_parents}
        intercept = np.zeros(n_levels)
        noise = np.zeros(n_levels)
        svals = values[sens].astype(np.intp)
        for level in range(n_levels):
            rows = svals == level
            if rows.sum() <= len(obs_parents) + 1:
                raise FitError(f"not enough rows in sensitive level {level} to fit {node}")
            c, b, sd = ols_fit(rows)
            for p, cv in zip(obs_parents, c):
                coefs[p][level] = cv
            intercept[level] = b
            noise[level] = sd
        coefs[sens] = np.zeros(n_levels)   # group shift lives in the intercepts
        for p in lat_parents:
            coefs[p] = np.ones(n_levels)
        return Mechanism("linear_gaussian_by_s", coeffs=coefs, intercept=intercept, noise_std=noise)

    rows = np.ones(len(v), dtype=bool)
    if not parents:
        return Mechanism("gaussian_root", intercept=float(v.mean()), noise_std=float(v.std()))
    c, b, sd = ols_fit(rows)
    coeffs = {p: float(cv) for p, cv in zip(obs_parents, c)}
    for p in lat_parents:
        coeffs[p] = 1.0
    return Mechanism("linear_gaussian", coeffs=coeffs, intercept=b, noise_std=sd)


def fit_linear_scm(graph: CausalGraph, data: Dataset) -> Scm:
    """Per-node OLS on observed parents; latent parents get unit coefficient
    with a standard-normal marginal, the residual absorbing the rest."""
    sens = graph.sensitive()
    target = graph.target()
    values = {name: data.X[:, i] for i, name in enumerate(data.feature_names)}
    values[sens] = data.s.astype(np.float64)
    values[target] = data.y
    n_levels = int(data.s.max()) + 1
    mechanisms: dict[str, Mechanism] = {}
    for node in graph.topological_order():
        if node == sens:
            freqs = np.bincount(data.s, minlength=n_levels).astype(float)
            mechanisms[node] = Mechanism("categorical_root", probs=freqs / freqs.sum())
        elif node in graph.latents():
            mechanisms[node] = Mechanism("gaussian_root", intercept=0.0, noise_std=1.0)
        else:
            mechanisms[node] = _fit_node(node, graph.parents(node), values, sens,
                                         graph.latents(), n_levels)
    scm = Scm(graph=graph, mechanisms=mechanisms)
    validate(scm)
    return scm


# -- the synthetic study model and its corrupted variants ------------------

SYNTHETIC_PI = (0.5, 0.4, 0.05, 0.05)
SYNTHETIC_W = (0.1, 0.2, 1.0, 2.0)
SYNTHETIC_SIGMA = (0.5, 1.0, 1.5, 2.0)


def claire_synthetic() -> Scm:
    """Four-group synthetic model: S -> X1 <- U, Y = X1 + X0, X2 = Y + noise,
    with group-dependent shift W_S * S and group-dependent noise scales."""
    graph = CausalGraph(
        nodes={"S": "sensitive", "U": "latent", "X0": "observed",
               "X1": "observed", "X2": "observed", "Y": "target"},
        edges=[("S", "X1"), ("U", "X1"), ("X1", "Y"), ("X0", "Y"), ("Y", "X2")],
    )
    w = np.asarray(SYNTHETIC_W)
    sig = np.asarray(SYNTHETIC_SIGMA)
    mechanisms = {
        "S": Mechanism("categorical_root", probs=np.asarray(SYNTHETIC_PI)),
        "U": Mechanism("gaussian_root", intercept=0.0, noise_std=1.0),
        "X0": Mechanism("gaussian_root", intercept=0.0, noise_std=1.0),
        "X1": Mechanism("linear_gaussian_by_s",
                        coeffs={"S": w, "U": np.ones(4)},
                        intercept=np.zeros(4), noise_std=sig),
        "Y": Mechanism("linear_gaussian_by_s",
                       coeffs={"X1": np.ones(4), "X0": np.ones(4)},
                       intercept=np.zeros(4), noise_std=sig),
        "X2": Mechanism("linear_gaussian_by_s",
                        coeffs={"Y": np.ones(4)},
                        intercept=np.zeros(4), noise_std=sig),
    }
    scm = Scm(graph=graph, mechanisms=mechanisms)
    validate(scm)
    return scm


def incorrect_variant(scm: Scm, which: str, n_fit: int = 200_000, seed: int = 7) -> Scm:
    """Corrupted copies of the synthetic model: M1 reverses Y -> X2,
    M2 drops S -> X1. Affected mechanisms are refit from sampled data."""
    if which not in ("M1", "M2"):
        raise ValueError(f"unknown variant {which!r}")
    g = scm.graph
    if which == "M1":
        edges = [e for e in g.edges if e != ("Y", "X2")] + [("X2", "Y")]
        affected = {"X2", "Y"}
    else:
        edges = [e for e in g.edges if e != ("S", "X1")]
        affected = {"X1"}
    new_graph = CausalGraph(nodes=dict(g.nodes), edges=edges)
    data, _ = sample(scm, n_fit, seed)
    fitted = fit_linear_scm(new_graph, data)
    mechanisms = {}
    for node in new_graph.nodes:
        mechanisms[node] = fitted.mechanisms[node] if node in affected else scm.mechanisms[node]
    out = Scm(graph=new_graph, mechanisms=mechanisms)
    validate(out)
    return out


# -- derivation-appendix model (analytic OLS oracle) -----------------------

@dataclass
class AppendixSem:
    """Linear-Gaussian chain with a continuous sensitive root; closed-form
    OLS coefficients for several feature sets are known exactly."""

    sigma_s: float = 1.0
    sigma_u: float = 1.0
    sigma_1: float = 1.0
    sigma_y: float = 1.0
    sigma_2: float = 1.0
    sigma_3: float = 1.0

    def sample(self, n: int, seed: int) -> dict[str, np.ndarray]:
        rng = np.random.default_rng(seed)
        s = rng.normal(0.0, self.sigma_s, n)
        u = rng.normal(0.0, self.sigma_u, n)
        x3 = rng.normal(0.0, self.sigma_3, n)
        x1 = s + u + rng.normal(0.0, self.sigma_1, n)
        y = x1 + x3 + rng.normal(0.0, self.sigma_y, n)
        x2 = y + rng.normal(0.0, self.sigma_2, n)
        return {"S": s, "U": u, "X1": x1, "X2": x2, "X3": x3, "Y": y}

    def coef_y_given_x3(self) -> tuple[float, ...]:
        return (1.0,)

    def coef_y_given_x1_x3(self) -> tuple[float, ...]:
        return (1.0, 1.0)

    def coef_y_given_x1_x2_x3(self) -> tuple[float, ...]:
        k = self.sigma_2 ** 2 / (self.sigma_2 ** 2 + self.sigma_y ** 2)
        return (k, 1.0 - k, k)
