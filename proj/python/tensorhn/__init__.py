"""Harder-Narasimhan tools for tensors.

Tensors and supports are the JSON documents read by the command-line tool,
given either as dicts or as JSON text. Results are plain dicts, identical to
the "result" object of the tool's reports.
"""

import json

from . import _core
from ._core import FieldError, InputError, InstabilityError, VerificationError

DEFAULT_SEED = _core.DEFAULT_SEED

__all__ = [
    "FieldError",
    "InputError",
    "InstabilityError",
    "VerificationError",
    "acr",
    "balance",
    "compress",
    "cr",
    "entropy",
    "four_cycle",
    "gap",
    "gauge",
    "hn",
    "matmul_tensor",
    "mlcr",
    "power_extract",
    "semistable",
    "shift",
    "subrank",
    "tpq",
    "verify",
    "zeta",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _rho(rho):
    return str(rho)


def hn(tensor, mode=3, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.hn(_text(tensor), mode, seed, field))


def zeta(tensor, rho="1/2", mode=3, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.zeta(_text(tensor), mode, _rho(rho), seed, field))


def acr(tensor, mode=3, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.acr(_text(tensor), mode, seed, field))


def semistable(tensor, mode=3, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.semistable(_text(tensor), mode, seed, field))


def gauge(tensor, mode=3, field=None):
    return json.loads(_core.gauge(_text(tensor), mode, field))


def cr(tensor, mode=3, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.cr(_text(tensor), mode, seed, field))


def shift(tensor, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.shift(_text(tensor), seed, field))


def compress(tensor, p=0, seed=DEFAULT_SEED, field=None):
    """Restrictions onto matrix multiplication tensors; p=0 runs every feasible p."""
    return json.loads(_core.compress(_text(tensor), p, seed, field))


def power_extract(tensor, rho="1/2", N=1, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.power_extract(_text(tensor), _rho(rho), N, seed, field))


def verify(tensor, extraction, rho="1/2", field=None):
    """Raises VerificationError (with the JSON result in .result) on rejection."""
    return json.loads(_core.verify(_text(tensor), _text(extraction), _rho(rho), field))


def balance(support):
    return json.loads(_core.balance(_text(support)))


def entropy(support, rho="1/2", theta=None):
    if theta is not None:
        return json.loads(_core.entropy_theta(_text(support), [str(t) for t in theta]))
    return json.loads(_core.entropy(_text(support), _rho(rho)))


def four_cycle(weights, seed=DEFAULT_SEED, field=None):
    return json.loads(_core.four_cycle(list(weights), seed, field))


def tpq(p, q, N=0, seed=DEFAULT_SEED):
    return json.loads(_core.tpq(p, q, N, seed))


def gap(n=10):
    return json.loads(_core.gap(n))


def subrank(terms):
    """terms: (i, j, c) triples for c a^i b^j."""
    return json.loads(_core.subrank([(i, j, str(c)) for i, j, c in terms]))


def mlcr(tensor, pair=(1, 2), seed=DEFAULT_SEED, field=None):
    return json.loads(_core.mlcr(_text(tensor), pair[0], pair[1], seed, field))


def matmul_tensor(E, H, L, field="gf:101"):
    return json.loads(_core.matmul_tensor(E, H, L, field))
