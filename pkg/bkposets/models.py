"""
JSON documents read and written by the command-line front end.

Uses pydantic models for validation and serialization. Big integers
(group orders, stabilizer sizes) are carried as decimal strings.
"""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    TypeAdapter,
    ValidationError,
    ValidationInfo,
    computed_field,
    field_validator,
)

from bkposets.errors import CycleError, PosetFormatError, RangeError, ShapeError
from bkposets.permgroup import PermutationGroup
from bkposets.poset import Poset, PosetStructure, from_covers
from bkposets.relations import RelationReport
from bkposets.tableau import ColumnStrictTableau

_WORDS = TypeAdapter(list[list[int]])

BigInt = Annotated[int, PlainSerializer(str, return_type=str, when_used="json")]


class _Document(BaseModel):
    model_config = ConfigDict(frozen=True)


class PosetDocument(_Document):
    """``{"n": 4, "covers": [[0, 2], ...]}``"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(ge=0)
    covers: list[tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_poset(cls, poset: Poset) -> PosetDocument:
        return cls(n=poset.n, covers=[tuple(c) for c in poset.covers])

    @classmethod
    def parse(cls, text: str) -> PosetDocument:
        try:
            return cls.model_validate_json(text)
        except ValidationError as error:
            raise PosetFormatError(f"malformed poset document: {error.errors()[0]['msg']}") from error

    def to_poset(self) -> Poset:
        """Build the poset; redundant covers are reduced, bad ids and cycles raise."""
        return from_covers(self.n, self.covers)


def load_poset(text: str) -> Poset:
    try:
        return PosetDocument.parse(text).to_poset()
    except (RangeError, CycleError) as error:
        raise PosetFormatError(str(error)) from error


class TableauDocument(_Document):
    model_config = ConfigDict(extra="forbid", frozen=True)

    shape: list[int]
    rows: list[list[int]]

    @field_validator("rows")
    @classmethod
    def _rows_match_shape(cls, rows: list[list[int]], info: ValidationInfo) -> list[list[int]]:
        shape = info.data.get("shape")
        if shape is not None and [len(row) for row in rows] != shape:
            raise ValueError(f"row lengths {[len(row) for row in rows]} do not match shape {shape}")
        return rows

    @classmethod
    def from_tableau(cls, tableau: ColumnStrictTableau) -> TableauDocument:
        return cls(shape=list(tableau.shape.parts), rows=[list(row) for row in tableau.rows])

    def to_tableau(self) -> ColumnStrictTableau:
        return ColumnStrictTableau.of(self.rows)


def load_tableau(text: str) -> ColumnStrictTableau:
    try:
        return TableauDocument.model_validate_json(text).to_tableau()
    except ValidationError as error:
        raise PosetFormatError(f"malformed tableau document: {error.errors()[0]['msg']}") from error
    except ShapeError as error:
        raise PosetFormatError(str(error)) from error


class StructureReport(_Document):
    n: int
    covers: list[tuple[int, int]]
    connected: bool
    height: int
    width: int
    disjoint_union_of_chains: bool
    series_parallel: bool
    components: list[PosetDocument]
    ordinal_summands: list[PosetDocument]
    split_points: list[int]
    extensions: int | None = None

    @classmethod
    def build(
        cls,
        poset: Poset,
        record: PosetStructure,
        summands: tuple[Poset, ...],
        split_points: tuple[int, ...],
        extensions: int | None,
    ) -> StructureReport:
        return cls(
            n=poset.n,
            covers=[tuple(c) for c in poset.covers],
            connected=record.connected,
            height=record.height,
            width=record.width,
            disjoint_union_of_chains=record.is_disjoint_union_of_chains,
            series_parallel=record.is_series_parallel,
            components=[PosetDocument.from_poset(part) for part in record.components],
            ordinal_summands=[PosetDocument.from_poset(part) for part in summands],
            split_points=list(split_points),
            extensions=extensions,
        )


class GroupReport(_Document):
    degree: int
    order: BigInt
    transitive: bool
    primitive: bool
    two_transitive: bool
    symmetric: bool
    stab_order: BigInt

    @classmethod
    def from_group(cls, group: PermutationGroup) -> GroupReport:
        return cls(
            degree=group.degree,
            order=group.order,
            transitive=group.is_transitive(),
            primitive=group.is_primitive(),
            two_transitive=group.is_2_transitive(),
            symmetric=group.is_symmetric(),
            stab_order=group.stabilizer_order(),
        )


class GroupSummary(_Document):
    degree: int
    order: BigInt
    primitive: bool
    symmetric: bool


class CactusFailureDocument(_Document):
    i: int
    j: int
    k: int
    witness: int
    witness_word: list[int] | None = None


class RelationReportDocument(_Document):
    trivial_ti: list[int]
    braid_failures: list[int]
    cactus_failures: list[CactusFailureDocument]
    le_cactus: bool
    le_symmetric: bool
    le_primitive: bool
    stab_size: BigInt
    comparability: int

    @classmethod
    def from_report(
        cls, report: RelationReport, witness_words: list[list[int]] | None = None
    ) -> RelationReportDocument:
        """``witness_words`` (the L(P) word list) attaches the witnessing extension to each failure."""
        failures = [
            CactusFailureDocument(
                i=f.i,
                j=f.j,
                k=f.k,
                witness=f.witness,
                witness_word=witness_words[f.witness] if witness_words is not None else None,
            )
            for f in report.cactus_failures
        ]
        return cls(
            trivial_ti=list(report.trivial_ti),
            braid_failures=list(report.braid_failures),
            cactus_failures=failures,
            le_cactus=report.le_cactus,
            le_symmetric=report.le_symmetric,
            le_primitive=report.le_primitive,
            stab_size=report.stab_size,
            comparability=report.comparability,
        )


class LawReport(_Document):
    laws: dict[str, bool | None]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(value is not False for value in self.laws.values())


class ClassificationRecord(_Document):
    """One census line per isomorphism class."""

    canonical_form: str
    n: int
    covers: list[tuple[int, int]]
    connected: bool
    series_parallel: bool
    skipped: str | None = None
    report: RelationReportDocument | None = None
    group: GroupSummary | None = None


class SuiteItem(_Document):
    name: str
    status: Literal["pass", "fail", "skipped"]
    seconds: float
    detail: str = ""


class SuiteReport(_Document):
    items: list[SuiteItem]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(item.status != "fail" for item in self.items)


class ExtensionList(_Document):
    """The extension list export: a JSON array of words."""

    words: list[list[int]]

    def dump(self) -> str:
        return _WORDS.dump_json(self.words).decode()
