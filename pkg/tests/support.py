"""Shared helpers for the test suite: deterministic corpora and the
certificate tamper engine used by the mutation-soundness checks."""

from __future__ import annotations

import random

from sp4cert.certificates import (
    CONJ,
    INV,
    MUL,
    SEED_M0,
    SEED_P2,
    Certificate,
    CertNode,
)
from sp4cert.generators import generator
from sp4cert.groups import GroupLabel
from sp4cert.matrices import Mat4
from sp4cert.sampling import SampleSpec, sample


def corpus(group: GroupLabel, p: int, count: int, seed: int, max_len: int = 20):
    """Deterministic list of group members with word lengths 0..max_len."""
    out = []
    for i in range(count):
        spec = SampleSpec(group=group, p=p, seed=seed + i, word_length=i % (max_len + 1))
        out.append(sample(spec))
    return out


def evaluate_nodes(cert: Certificate) -> list[Mat4]:
    """Pure replay of a certificate, with no side-condition checks."""
    m0 = generator("M0", cert.p)
    values: list[Mat4] = []
    for node in cert.nodes:
        if node.op == SEED_M0:
            values.append(m0)
        elif node.op == SEED_P2:
            values.append(node.value)
        elif node.op == MUL:
            values.append(values[node.args[0]] * values[node.args[1]])
        elif node.op == INV:
            values.append(values[node.args[0]].inv())
        else:
            g = node.value
            values.append(g * values[node.args[0]] * g.inv())
    return values


_E12 = Mat4.from_rows(
    [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
)
_DET2 = Mat4.diagonal(2, 1, 1, 1)


def random_tamper(cert: Certificate, rng: random.Random) -> Certificate:
    """Replace one node so the certificate must be rejected.

    Seed and conjugator tampers break a side condition outright
    (a non-level-p^2 seed, a +1 in a forbidden residue slot, or a
    determinant-2 factor killing symplecticity).  Argument redirects on
    mul/inv nodes are accepted only when the tampered root evaluates to
    something other than the target, so the replay check must fire.
    """
    nodes = list(cert.nodes)
    for _ in range(200):
        i = rng.randrange(len(nodes))
        node = nodes[i]
        if node.op == SEED_M0:
            new = CertNode(SEED_P2, (), generator("M0", cert.p))
        elif node.op == SEED_P2:
            new = CertNode(SEED_P2, (), node.value + _E12)
        elif node.op == CONJ:
            new = CertNode(CONJ, node.args, node.value * _DET2)
        else:
            if i == 0:
                continue
            slot = rng.randrange(len(node.args))
            replacement = rng.randrange(i)
            if replacement == node.args[slot]:
                continue
            args = list(node.args)
            args[slot] = replacement
            new = CertNode(node.op, tuple(args))
            candidate = Certificate(
                cert.p, tuple(nodes[:i] + [new] + nodes[i + 1:]), cert.root, cert.target
            )
            values = evaluate_nodes(candidate)
            if values[cert.root] == cert.target:
                continue  # redirect happened to preserve the value; retry
            return candidate
        return Certificate(
            cert.p, tuple(nodes[:i] + [new] + nodes[i + 1:]), cert.root, cert.target
        )
    raise AssertionError("no tamperable node found")
