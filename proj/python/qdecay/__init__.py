"""Exact Haar twirls, relative-entropy decay and architecture bounds."""

import json

from ._qdecay import (
    CapacityError,
    Channel,
    DimensionError,
    PreconditionError,
    additive_depth,
    architecture_channel,
    beta,
    brickwork_json,
    cb_return_time,
    choi_channel,
    compose,
    continuity_bound,
    decay_ratio,
    depolarizing,
    full_depolarizer,
    global_twirl,
    hamiltonian_path,
    haar_twirl,
    is_conditional_expectation,
    kraus_channel,
    lattice_json,
    local_twirl,
    mc_twirl,
    relative_entropy,
    relative_error,
    run_cli,
    validate_architecture,
    verify,
)
from ._qdecay import _bound_json


def bound(formula, **params):
    """Evaluate a closed-form bound and return its report as a dict.

    Keyword names follow the command-line flags with '-' replaced by '_',
    e.g. bound("parallel-r", q=2, k=1, n=8, eps=0.5).
    """
    args = [formula]
    for name, value in params.items():
        flag = "--" + name.replace("_", "-")
        if isinstance(value, (list, tuple)):
            args.append(flag)
            args.extend(str(v) for v in value)
        else:
            args.extend([flag, repr(value) if isinstance(value, float) else str(value)])
    return json.loads(_bound_json(args))


__all__ = [name for name in dir() if not name.startswith("_")]
