"""Uniform dispatch over the eleven ranking methods.

Keys, in the fixed benchmark row order: svmrfe, inffs, relieff, fsv,
mutinf, mrmr, fisher, laplacian, mcfs, l0, ecfs.  Every entry validates
its parameter map (unknown keys are a hard error) and returns a
FeatureRanking carrying the requested seed.
"""

import dataclasses

from .core import UsageError, ranking_from_scores
from .core import standardize as _standardize
from .embedded import (
    FSV,
    L0,
    SVMRFE,
    FsvParams,
    RfeParams,
    fsv_rank,
    l0_fs,
    svm_rfe,
)
from .filters import (
    ECFS,
    FISHER,
    INFFS,
    LAPLACIAN,
    MCFS,
    MRMR,
    MUTINF,
    RELIEFF,
    GraphParams,
    ec_fs,
    fisher_score,
    inf_fs,
    laplacian_score,
    mcfs_score,
    mrmr_rank,
    mutinf_fs,
    relief_f,
)


def _int_value(name, value):
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, float) and not value.is_integer():
            raise ValueError
        return int(value)
    except (TypeError, ValueError):
        raise UsageError("param %s: expected an integer, got %r"
                         % (name, value)) from None


def _float_value(name, value):
    try:
        if isinstance(value, bool):
            raise ValueError
        return float(value)
    except (TypeError, ValueError):
        raise UsageError("param %s: expected a number, got %r"
                         % (name, value)) from None


_CONVERT = {"int": _int_value, "float": _float_value}


def _graph(p):
    return GraphParams(k_neighbors=p.get("k_neighbors", 5),
                       heat_t=p.get("heat_t"))


def _run_svmrfe(data, labels, p, seed):
    rp = RfeParams(c_reg=p.get("C", 1.0), elim_fraction=p.get("elim_fraction"))
    return svm_rfe(data, labels, rp)


def _run_inffs(data, labels, p, seed):
    return ranking_from_scores(inf_fs(data, alpha=p.get("alpha", 0.5)), INFFS)


def _run_relieff(data, labels, p, seed):
    scores = relief_f(data, labels, k=p.get("k", 10),
                      sample_count=p.get("sample_count"), seed=seed)
    return ranking_from_scores(scores, RELIEFF)


def _run_fsv(data, labels, p, seed):
    fp = FsvParams(lam=p.get("lambda", 0.5), alpha_cc=p.get("alpha", 5.0),
                   max_iter=p.get("max_iter", 50), tol=p.get("tol", 1e-6))
    return fsv_rank(data, labels, fp)


def _run_mutinf(data, labels, p, seed):
    return ranking_from_scores(mutinf_fs(data, labels, bins=p.get("bins")),
                               MUTINF)


def _run_mrmr(data, labels, p, seed):
    return mrmr_rank(data, labels, bins=p.get("bins"))


def _run_fisher(data, labels, p, seed):
    return ranking_from_scores(fisher_score(data, labels), FISHER)


def _run_laplacian(data, labels, p, seed):
    return ranking_from_scores(laplacian_score(data, _graph(p)), LAPLACIAN)


def _run_mcfs(data, labels, p, seed):
    scores = mcfs_score(data, _graph(p), n_eigvecs=p.get("n_eigvecs"),
                        lambda_frac=p.get("lambda_frac", 0.01), labels=labels)
    return ranking_from_scores(scores, MCFS)


def _run_l0(data, labels, p, seed):
    return l0_fs(data, labels, c_reg=p.get("C", 1.0),
                 max_iter=p.get("max_iter", 20))


def _run_ecfs(data, labels, p, seed):
    scores = ec_fs(data, labels, alpha=p.get("alpha", 0.5), bins=p.get("bins"))
    return ranking_from_scores(scores, ECFS)


@dataclasses.dataclass(frozen=True)
class _Entry:
    descriptor: object
    supervised: bool
    schema: dict
    runner: object


_TABLE = {
    "svmrfe": _Entry(SVMRFE, True,
                     {"C": "float", "elim_fraction": "float"}, _run_svmrfe),
    "inffs": _Entry(INFFS, False, {"alpha": "float"}, _run_inffs),
    "relieff": _Entry(RELIEFF, True,
                      {"k": "int", "sample_count": "int"}, _run_relieff),
    "fsv": _Entry(FSV, True,
                  {"lambda": "float", "alpha": "float",
                   "max_iter": "int", "tol": "float"}, _run_fsv),
    "mutinf": _Entry(MUTINF, True, {"bins": "int"}, _run_mutinf),
    "mrmr": _Entry(MRMR, True, {"bins": "int"}, _run_mrmr),
    "fisher": _Entry(FISHER, True, {}, _run_fisher),
    "laplacian": _Entry(LAPLACIAN, False,
                        {"k_neighbors": "int", "heat_t": "float"},
                        _run_laplacian),
    "mcfs": _Entry(MCFS, False,
                   {"k_neighbors": "int", "heat_t": "float",
                    "n_eigvecs": "int", "lambda_frac": "float"}, _run_mcfs),
    "l0": _Entry(L0, True, {"C": "float", "max_iter": "int"}, _run_l0),
    "ecfs": _Entry(ECFS, True, {"alpha": "float", "bins": "int"}, _run_ecfs),
}

METHOD_ORDER = tuple(_TABLE)


def _entry(method):
    try:
        return _TABLE[method]
    except KeyError:
        raise UsageError("unknown method %r; choices: %s"
                         % (method, ", ".join(METHOD_ORDER))) from None


def method_names():
    return list(METHOD_ORDER)


def descriptor(method):
    return _entry(method).descriptor


def is_supervised(method):
    return _entry(method).supervised


def convert_params(method, params):
    """Validate a raw parameter map against the method's schema.

    Values may be native numbers or strings (as parsed from the CLI).
    Returns a dict in fixed schema order so serialized documents do not
    depend on the caller's key order.
    """
    schema = _entry(method).schema
    unknown = sorted(set(params) - set(schema))
    if unknown:
        raise UsageError("unknown param(s) for %s: %s (valid: %s)"
                         % (method, ", ".join(unknown),
                            ", ".join(schema) or "none"))
    return {name: _CONVERT[schema[name]](name, params[name])
            for name in schema if name in params}


def rank(data, labels, method, params=None, seed=0, standardize=False):
    """Run one method end to end and return its FeatureRanking.

    ``params`` uses the per-method key names; unknown keys raise.  The
    seed feeds any sampling the method performs and is recorded on the
    result.  ``standardize`` preprocesses columns to zero mean and unit
    variance first (methods that always standardize do so regardless).
    """
    entry = _entry(method)
    p = convert_params(method, params or {})
    if entry.supervised and labels is None:
        raise UsageError("%s requires labels" % method)
    if standardize:
        data = _standardize(data)
    ranking = entry.runner(data, labels, p, int(seed))
    desc = entry.descriptor.with_params(p, ranking.method.iterations)
    return dataclasses.replace(ranking, method=desc, seed=int(seed))
