"""Bundled models.

``child_standin.net`` reuses the graph and state counts of the 20-variable
CHILD network (congenital heart disease in newborns). Its conditional tables
are synthetic, drawn by ``generate_child_standin`` from a fixed seed, so it is
a stand-in for the published parameters, not a copy of them.
"""
from __future__ import annotations

import random
from fractions import Fraction
from importlib import resources
from itertools import product

from .modelio import NetworkModel, load_model, parse_network, serialize_network
from .potential import Domain, Potential, Variable
from .semiring import ARITH_RATIONAL

CHILD_STATES = {
    "BirthAsphyxia": ("yes", "no"),
    "Disease": ("PFC", "TGA", "Fallot", "PAIVS", "TAPVD", "Lung"),
    "Age": ("d0_3", "d4_10", "d11_30"),
    "LVH": ("yes", "no"),
    "DuctFlow": ("Lt_to_Rt", "None", "Rt_to_Lt"),
    "CardiacMixing": ("None", "Mild", "Complete", "Transp"),
    "LungParench": ("Normal", "Congested", "Abnormal"),
    "LungFlow": ("Normal", "Low", "High"),
    "Sick": ("yes", "no"),
    "HypDistrib": ("Equal", "Unequal"),
    "HypoxiaInO2": ("Mild", "Moderate", "Severe"),
    "CO2": ("Normal", "Low", "High"),
    "ChestXray": ("Normal", "Oligaemic", "Plethoric", "Grd_Glass", "Asy_Patch"),
    "Grunting": ("yes", "no"),
    "LVHreport": ("yes", "no"),
    "LowerBodyO2": ("lt5", "r5_12", "ge12"),
    "RUQO2": ("lt5", "r5_12", "ge12"),
    "CO2Report": ("lt7_5", "ge7_5"),
    "XrayReport": ("Normal", "Oligaemic", "Plethoric", "Grd_Glass", "Asy_Patch"),
    "GruntingReport": ("yes", "no"),
}

CHILD_PARENTS = {
    "BirthAsphyxia": (),
    "Disease": ("BirthAsphyxia",),
    "Age": ("Disease", "Sick"),
    "LVH": ("Disease",),
    "DuctFlow": ("Disease",),
    "CardiacMixing": ("Disease",),
    "LungParench": ("Disease",),
    "LungFlow": ("Disease",),
    "Sick": ("Disease",),
    "HypDistrib": ("DuctFlow", "CardiacMixing"),
    "HypoxiaInO2": ("CardiacMixing", "LungParench"),
    "CO2": ("LungParench",),
    "ChestXray": ("LungParench", "LungFlow"),
    "Grunting": ("LungParench", "Sick"),
    "LVHreport": ("LVH",),
    "LowerBodyO2": ("HypDistrib", "HypoxiaInO2"),
    "RUQO2": ("HypoxiaInO2",),
    "CO2Report": ("CO2",),
    "XrayReport": ("ChestXray",),
    "GruntingReport": ("Grunting",),
}

# ancestrally closed, so its CPTs form a network of their own
CHILD_SUBNETWORK = ("BirthAsphyxia", "Disease", "Sick", "Age", "LVH", "LVHreport",
                    "DuctFlow", "CardiacMixing", "HypDistrib", "LungParench")

CHILD_SEED = 20


def _topological(parents: dict) -> list:
    done, out = set(), []

    def visit(n):
        if n in done:
            return
        for p in parents[n]:
            visit(p)
        done.add(n)
        out.append(n)

    for n in parents:
        visit(n)
    return out


def random_cpt_rows(rng: random.Random, child: Variable, parents: list) -> dict:
    """Rows of a conditional table with small-denominator rational entries."""
    rows = {}
    for combo in product(*(range(p.size) for p in parents)):
        weights = [rng.randint(1, 9) for _ in range(child.size)]
        weights[rng.randrange(child.size)] *= 4
        total = sum(weights)
        for i, w in enumerate(weights):
            rows[(i,) + combo] = Fraction(w, total)
    return rows


def generate_child_standin(seed: int = CHILD_SEED) -> NetworkModel:
    rng = random.Random(seed)
    variables = {n: Variable(n, s) for n, s in CHILD_STATES.items()}
    factors, headers = [], []
    for name in _topological(CHILD_PARENTS):
        child = variables[name]
        parents = [variables[p] for p in CHILD_PARENTS[name]]
        domain = Domain.of([child] + parents)
        order = [child.name] + [p.name for p in parents]
        mapping = {}
        for key, value in random_cpt_rows(rng, child, parents).items():
            by_name = dict(zip(order, key))
            mapping[tuple(by_name[n] for n in domain.names)] = value
        factors.append(Potential.from_mapping(domain, mapping, ARITH_RATIONAL))
        headers.append(("cpt", tuple(order)))
    order = _topological(CHILD_PARENTS)
    return NetworkModel([variables[n] for n in order], factors, ARITH_RATIONAL, headers)


TWO_COINS = """\
# two independent coins
semiring arith-rational
variable coin1 {heads, tails}
variable coin2 {heads, tails}

cpt coin1
heads : 0.6
tails : 0.4

cpt coin2
heads : 0.5
tails : 0.5
"""


def data_path(name: str):
    return resources.files("anytime_inference") / "data" / name


def child_standin() -> NetworkModel:
    return parse_network(data_path("child_standin.net").read_text(encoding="utf-8"))


def two_coins() -> NetworkModel:
    return parse_network(TWO_COINS)


def write_child_standin(path, seed: int = CHILD_SEED):
    text = "# CHILD-structured stand-in network: published graph and state counts,\n" \
           f"# synthetic conditional tables (seed {seed}).\n" + \
           serialize_network(generate_child_standin(seed))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text


__all__ = ["child_standin", "two_coins", "generate_child_standin", "write_child_standin",
           "CHILD_SUBNETWORK", "load_model", "data_path"]
