"""
Poset census and per-class classification.

``all_posets(n)`` grows every class on ``n`` elements from the classes on
``n - 1`` elements by adding a new maximal element above an order ideal,
then keeps one representative per canonical form. ``classify`` attaches a
relation report and group summary to each class, fanning the work out to a
process pool; results come back in canonical order whatever the worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from bkposets.errors import CapError, DegreeCapError, ParamError
from bkposets.models import ClassificationRecord, GroupSummary, RelationReportDocument
from bkposets.permgroup import bk_group
from bkposets.poset import Poset, add_maximal, antichain, canonical_form, components, is_series_parallel, order_ideals
from bkposets.relations import relation_report
from config import settings
from utils.decorators import log_method

logger = logging.getLogger(__name__)

PROPERTIES = ("le-cactus", "le-symmetric", "le-primitive", "braid")


@lru_cache(maxsize=None)
def _census(n: int) -> tuple[Poset, ...]:
    if n == 0:
        return (antichain(0),)
    found: dict[bytes, Poset] = {}
    for smaller in _census(n - 1):
        for ideal in order_ideals(smaller):
            grown = add_maximal(smaller, ideal)
            found.setdefault(canonical_form(grown), grown)
    logger.debug(f"Census n={n}: {len(found)} classes")
    return tuple(found[key] for key in sorted(found))


def all_posets(n: int) -> Iterator[Poset]:
    """One poset per isomorphism class on ``n`` elements, in canonical-form order."""
    if n < 0:
        raise ParamError(f"census size must be non-negative, got {n}")
    if n > settings.census_cap:
        raise CapError(f"census is capped at n = {settings.census_cap}, got {n}")
    yield from _census(n)


@dataclass(frozen=True)
class ScanFilter:
    """
    ``None`` leaves a structural flag unconstrained; ``require`` and
    ``exclude`` name properties from :data:`PROPERTIES` that must hold or fail.
    """

    connected: bool | None = None
    series_parallel: bool | None = None
    require: tuple[str, ...] = field(default_factory=tuple)
    exclude: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        unknown = sorted((set(self.require) | set(self.exclude)) - set(PROPERTIES))
        if unknown:
            raise ParamError(f"unknown properties {unknown}; known: {list(PROPERTIES)}")

    def structural_match(self, poset: Poset) -> bool:
        if self.connected is not None and (len(components(poset)) <= 1) != self.connected:
            return False
        return self.series_parallel is None or is_series_parallel(poset) == self.series_parallel

    def property_match(self, record: ClassificationRecord) -> bool:
        if record.report is None:
            return True
        return all(_property(record.report, name) for name in self.require) and not any(
            _property(record.report, name) for name in self.exclude
        )


def _property(report: RelationReportDocument, name: str) -> bool:
    if name == "braid":
        return not report.braid_failures
    return bool(getattr(report, name.replace("-", "_")))


def classify_poset(poset: Poset) -> ClassificationRecord:
    """The census record of one poset; over-cap posets come back flagged as skipped."""
    base = dict(
        canonical_form=canonical_form(poset).hex(),
        n=poset.n,
        covers=[tuple(c) for c in poset.covers],
        connected=len(components(poset)) <= 1,
        series_parallel=is_series_parallel(poset),
    )
    try:
        group = bk_group(poset)
        report = relation_report(poset)
    except DegreeCapError as error:
        logger.warning(f"Skipping {poset}: {error}")
        return ClassificationRecord(**base, skipped=str(error))
    return ClassificationRecord(
        **base,
        report=RelationReportDocument.from_report(report),
        group=GroupSummary(
            degree=group.degree,
            order=group.order,
            primitive=report.le_primitive,
            symmetric=report.le_symmetric,
        ),
    )


def _classify_batch(posets: list[Poset], max_degree: int) -> list[ClassificationRecord]:
    # the parent's degree cap applies inside worker processes too
    settings.max_degree = max_degree
    return [classify_poset(poset) for poset in posets]


@log_method
def classify(
    n: int,
    filters: ScanFilter | None = None,
    threads: int | None = None,
) -> list[ClassificationRecord]:
    """
    Classify every class on ``n`` elements and keep those passing ``filters``.
    Skipped (over-cap) classes are kept whenever they pass the structural
    filters, since their properties are unknown.
    """
    filters = filters or ScanFilter()
    threads = threads or settings.threads
    posets = list(all_posets(n))
    wanted = [poset for poset in posets if filters.structural_match(poset)]

    if threads <= 1 or len(wanted) <= 1:
        records = _classify_batch(wanted, settings.max_degree)
    else:
        size = -(-len(wanted) // threads)
        batches = [wanted[k : k + size] for k in range(0, len(wanted), size)]
        logger.info(f"Classifying {len(wanted)} classes on {threads} workers")
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_classify_batch, batches, [settings.max_degree] * len(batches)))
        records = [record for batch in results for record in batch]

    kept = [record for record in records if filters.property_match(record)]
    skipped = sum(1 for record in kept if record.skipped)
    if skipped:
        logger.warning(f"{skipped} of {len(kept)} classes at n={n} exceed the degree cap")
    return kept
