"""
Transcribed minimal complexes and their Euler characteristic checks.

Shapes of products such as ``FT_n`` are not determined by the Hecke algebra,
so they are read from `fixtures.yaml` rather than computed; only their
Euler characteristics are checked.
"""
from __future__ import annotations

import logging
from pathlib import Path

import pandas as pd
import yaml

from src.cells.tableaux import Tableau
from src.core.errors import VerificationError
from src.core.permutations import Permutation
from src.hecke.algebra import HeckeAlgebra, HeckeElement
from src.twists.idempotents import quasi_idempotent

from .complexes import ComplexShape, rouquier_shape

logger = logging.getLogger(__name__)

FIXTURE_FILE = Path(__file__).with_name("fixtures.yaml")
FIXTURE_VERSION = 1


def load_fixtures(path: str | Path | None = None) -> dict[str, dict]:
    """
    Reads the fixture file.

    Returns
    -------
    dict
        name -> {"n", "expect", "shape"} with ``shape`` a `ComplexShape`
    """
    path = Path(path) if path else FIXTURE_FILE
    with open(path, "r") as file:
        payload = yaml.safe_load(file)
    if payload.get("version") != FIXTURE_VERSION:
        raise ValueError(f"Unsupported fixture version {payload.get('version')!r} in {path}")

    fixtures = {}
    for entry in payload["fixtures"]:
        n = entry["n"]
        rows = [
            (int(degree), Permutation.parse(str(word), n), shift, mult)
            for degree, summands in entry["degrees"].items()
            for word, shift, mult in summands
        ]
        fixtures[entry["name"]] = {
            "n": n,
            "expect": entry["expect"],
            "shape": ComplexShape.from_rows(n, rows),
        }
    return fixtures


def expected_element(n: int, expect: dict) -> HeckeElement:
    """The Hecke element, in the KL basis, a fixture's Euler characteristic must equal."""
    algebra = HeckeAlgebra.for_rank(n)
    kind = expect["kind"]
    if kind == "twist":
        result = algebra.kl(Permutation.parse(str(expect["kl"]), n))
        for _ in range(expect["power"]):
            result = algebra.left_mul_standard_kl(algebra.w0, result)
        return result
    if kind == "rouquier":
        return algebra.to_kl(algebra.standard(Permutation.parse(str(expect["w"]), n)))
    if kind == "quasi_idempotent":
        return quasi_idempotent(Tableau.parse(expect["tableau"]))
    raise ValueError(f"Unknown fixture kind {kind!r}")


def fixture_euler_checks(path: str | Path | None = None) -> pd.DataFrame:
    """
    Compares every fixture's Euler characteristic with its Hecke element.
    Rouquier fixtures are also compared summand by summand with
    `rouquier_shape`.

    Returns
    -------
    pd.DataFrame
        One row per fixture: name, n, kind, summands, passed

    Raises
    ------
    VerificationError
        On the first mismatch
    """
    rows = []
    for name, fixture in load_fixtures(path).items():
        n, expect, shape = fixture["n"], fixture["expect"], fixture["shape"]
        euler = shape.euler_characteristic()
        expected = expected_element(n, expect)
        if euler != expected:
            raise VerificationError(
                "fixture_euler",
                {"fixture": name, "euler": euler.to_json(), "expected": expected.to_json()},
                f"Euler characteristic of {name} is {euler}, expected {expected}",
            )
        if expect["kind"] == "rouquier":
            computed = rouquier_shape(Permutation.parse(str(expect["w"]), n))
            if computed != shape:
                raise VerificationError(
                    "fixture_shape",
                    {"fixture": name, "computed": computed.to_json(), "transcribed": shape.to_json()},
                )
        rows.append({"name": name, "n": n, "kind": expect["kind"], "summands": shape.size, "passed": True})
        logger.debug("Fixture %s: %s", name, shape)
    logger.info("Checked %d transcribed complexes", len(rows))
    return pd.DataFrame(rows)
