"""Coverability, boundedness and model checking for Petri nets."""

import json

from ._pnvc import Error, Net, run as _run

__all__ = ["Error", "Net", "analyze", "bounds", "cover", "bounded", "check", "gen", "propcheck"]


def _net_options(net, options):
    if net is not None:
        options["net_text"] = net.to_text() if isinstance(net, Net) else str(net)
    return options


def _call(command, net=None, **options):
    given = {k: v for k, v in options.items() if v is not None}
    body, _ = _run(command, json.dumps(_net_options(net, given)))
    return json.loads(body)


def _marking_list(target):
    if isinstance(target, dict):
        return ",".join(f"{p}:{n}" for p, n in target.items())
    return target


def analyze(net, approximate=False):
    """Vertex cover, transition types and varieties."""
    return _call("analyze", net, approximate=approximate)


def bounds(net=None, target=None, **params):
    """Length bounds; params are i, j, m, W, k_prime, R, U, c_prime, d."""
    return _call("bounds", net, target=_marking_list(target), **params)


def cover(net, target, method="both", max_len=None, state_cap=None):
    """Decide whether `target` (dict or "p:n,..." string) is coverable."""
    return _call("cover", net, target=_marking_list(target), method=method, max_len=max_len, state_cap=state_cap)


def bounded(net, method="both", max_len=None, node_cap=None):
    """Decide boundedness with Karp-Miller, self-covering search or both."""
    return _call("bounded", net, method=method, bounded_max_len=max_len, node_cap=node_cap)


def check(net, formula, max_depth=None, state_cap=None, fallback_depth=None):
    """Model-check a formula; the verdict is "true", "false" or "unknown"."""
    return _call("mc", net, formula=formula, max_depth=max_depth, mc_state_cap=state_cap,
                 fallback_depth=fallback_depth)


def gen(places=4, transitions=5, max_weight=2, max_initial=2, target_vc=None, seed=0):
    """Deterministic random net for the given shape and seed."""
    body = _call("gen", places=places, transitions=transitions, max_weight=max_weight,
                 max_initial=max_initial, target_vc=target_vc, seed=seed)
    return Net.parse_json(json.dumps(body))


def propcheck(suites=None, trials=200, seed=0, corrupt_transfer=False):
    """Run property suites; returns the JSON report."""
    return _call("propcheck", suite=list(suites) if suites else None, trials=trials, seed=seed,
                 corrupt_transfer=corrupt_transfer)
