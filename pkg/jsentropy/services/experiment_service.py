"""Experiment files, the end-to-end analysis pipeline and theory curves.

Experiment files come in two layouts:

* structured YAML with ``format_version``, ``metadata`` and ``records``,
  each record holding ``state_label``, optional ``parameter_a`` and
  ``measurements`` (``label`` plus comma-separated ``probabilities``);
* flat CSV/TSV with columns state_label, parameter_a, measurement_label,
  outcome_index, probability.
"""

import math
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
import structlog
import yaml
from pydantic import ValidationError

from jsentropy.core.config import settings
from jsentropy.core.exceptions import (
    DegenerateInputError,
    EntropyAnalysisError,
    ExperimentParseError,
    InvalidInputError,
    ParameterError,
    describe_validation_error,
)
from jsentropy.schemas.distribution import EntropyVector, MeasurementRecord, ProbabilityDistribution
from jsentropy.schemas.experiment import (
    ComparisonRow,
    CurvePoint,
    EntropyRow,
    ExperimentFile,
    ExperimentRecord,
    MeasurementEntry,
    PipelineResult,
    RecordError,
    ShrinkRow,
)
from jsentropy.schemas.quantum import BoundReport, DensityMatrix, NoiseModel
from jsentropy.schemas.shrinkage import ShrinkageConfig, ShrinkageResult, Sigma2Mode
from jsentropy.services import bound_service, estimator_service
from jsentropy.services.entropy_service import (
    TheoryState,
    entropy_vector,
    renyi_entropy,
    shannon_entropy,
    theory_sum,
    theory_vector,
)
from jsentropy.services.presets import BasisPresetFactory
from jsentropy.services.simulation_service import (
    computational_state,
    derive_seeds,
    generate_experiment,
    spin1_state,
)

logger = structlog.stdlib.get_logger(__name__)

FLAT_COLUMNS = ("state_label", "parameter_a", "measurement_label", "outcome_index", "probability")
SIMULATION_PRESET = "spin1-family"


# ---------------------------------------------------------------------------
# Reading and writing
# ---------------------------------------------------------------------------


def _read_structured(path: Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(exc, "problem", None) or str(exc)
        raise ExperimentParseError(f"malformed YAML: {problem}", path=str(path), line=line) from exc

    if not isinstance(data, dict):
        raise ExperimentParseError("top level must be a mapping", path=str(path), line=1)
    # Singular block names are accepted as aliases.
    if "records" not in data and "record" in data:
        data["records"] = data.pop("record")
    for record in data.get("records") or []:
        if isinstance(record, dict) and "measurements" not in record and "measurement" in record:
            record["measurements"] = record.pop("measurement")
    return data


def _read_flat(path: Path) -> dict[str, Any]:
    sep = "\t" if path.suffix.lower() == ".tsv" else ","
    try:
        frame = pd.read_csv(path, sep=sep, dtype=str, keep_default_na=False)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise ExperimentParseError(f"malformed table: {exc}", path=str(path)) from exc

    missing = [column for column in FLAT_COLUMNS if column not in frame.columns]
    if missing:
        raise ExperimentParseError(f"missing columns {missing}", path=str(path), line=1)

    # (state_label, parameter_a) -> measurement label -> outcome index -> probability
    grouped: dict[tuple[str, Optional[float]], dict[str, dict[int, float]]] = {}
    for position, row in enumerate(frame.itertuples(index=False)):
        line = position + 2
        try:
            a_text = row.parameter_a.strip()
            a = float(a_text) if a_text and a_text.upper() != "NA" else None
            index = int(row.outcome_index)
            probability = float(row.probability)
        except ValueError as exc:
            raise ExperimentParseError(f"bad value: {exc}", path=str(path), line=line) from exc
        outcomes = grouped.setdefault((row.state_label, a), {}).setdefault(row.measurement_label, {})
        if index in outcomes:
            raise ExperimentParseError(
                f"outcome {index} of measurement {row.measurement_label!r} repeated",
                path=str(path),
                line=line,
            )
        outcomes[index] = probability

    records = []
    for (state_label, a), measurements in grouped.items():
        entries = []
        for label, outcomes in measurements.items():
            if sorted(outcomes) != list(range(len(outcomes))):
                raise ExperimentParseError(
                    f"outcome indices of measurement {label!r} must run 0..{len(outcomes) - 1}",
                    path=str(path),
                    field=f"{state_label}.{label}",
                )
            entries.append({"label": label, "probabilities": [outcomes[k] for k in sorted(outcomes)]})
        records.append({"state_label": state_label, "parameter_a": a, "measurements": entries})
    return {"format_version": settings.FORMAT_VERSION, "metadata": {}, "records": records}


def _normalise(
    experiment: ExperimentFile,
    strict: bool,
    tolerance: Optional[float],
) -> ExperimentFile:
    metadata = dict(experiment.metadata)
    records = []
    for index, record in enumerate(experiment.records):
        measurements = []
        for measurement in record.measurements:
            where = f"record {index} ({record.state_label}) measurement {measurement.label!r}"
            try:
                if strict:
                    dist, note = ProbabilityDistribution.strict(measurement.probabilities), None
                else:
                    dist, note = ProbabilityDistribution.from_empirical(measurement.probabilities, tolerance)
            except InvalidInputError as exc:
                raise InvalidInputError(
                    f"{where}: {exc.message}",
                    details={"record_index": index, "measurement": measurement.label, **exc.details},
                ) from exc
            if note:
                metadata[f"normalisation.record{index}.{measurement.label}"] = note
                logger.info(
                    "renormalised probabilities",
                    record_index=index,
                    measurement=measurement.label,
                    note=note,
                )
            measurements.append(MeasurementEntry(label=measurement.label, probabilities=dist.probs))
        records.append(record.model_copy(update={"measurements": measurements}))
    return ExperimentFile(format_version=experiment.format_version, metadata=metadata, records=records)


def load_experiment(
    path: "str | Path",
    strict: bool = False,
    tolerance: Optional[float] = None,
) -> ExperimentFile:
    """Read and validate an experiment file.

    Args:
        path: YAML (.yaml/.yml) or flat table (.csv/.tsv) file
        strict: Require every distribution to sum to 1 within the strict
            tolerance instead of renormalising
        tolerance: Lenient tolerance (defaults to ``settings.LENIENT_TOLERANCE``)

    Raises:
        ExperimentParseError: Unreadable file, with line or field context
        InvalidInputError: A distribution fails validation, with its record index
    """
    path = Path(path)
    if not path.is_file():
        raise ExperimentParseError("file not found", path=str(path))

    if path.suffix.lower() in (".csv", ".tsv"):
        data = _read_flat(path)
    else:
        data = _read_structured(path)

    try:
        experiment = ExperimentFile.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first.get("loc", ()))
        raise ExperimentParseError(describe_validation_error(exc), path=str(path), field=field) from exc

    experiment = _normalise(experiment, strict, tolerance)
    logger.info("loaded experiment", path=str(path), records=len(experiment.records))
    return experiment


def _format_probability(p: float) -> str:
    return repr(float(p))


def write_experiment(experiment: ExperimentFile, path: "str | Path") -> Path:
    """Write an experiment file; the suffix picks YAML or the flat table.

    Raises:
        InvalidInputError: Flat output for records sharing a
            (state_label, parameter_a) key, which the table cannot keep apart
    """
    path = Path(path)
    if path.suffix.lower() in (".csv", ".tsv"):
        seen: dict[tuple[str, Optional[float]], int] = {}
        for index, record in enumerate(experiment.records):
            key = (record.state_label, record.parameter_a)
            if key in seen:
                raise InvalidInputError(
                    f"records {seen[key]} and {index} share state {record.state_label!r} and "
                    f"a = {record.parameter_a}; write YAML to keep them separate",
                    details={"path": str(path), "record_index": index, "first_index": seen[key]},
                )
            seen[key] = index
        rows = [
            {
                "state_label": record.state_label,
                "parameter_a": "" if record.parameter_a is None else repr(float(record.parameter_a)),
                "measurement_label": measurement.label,
                "outcome_index": index,
                "probability": _format_probability(p),
            }
            for record in experiment.records
            for measurement in record.measurements
            for index, p in enumerate(measurement.probabilities)
        ]
        sep = "\t" if path.suffix.lower() == ".tsv" else ","
        pd.DataFrame(rows, columns=list(FLAT_COLUMNS)).to_csv(path, sep=sep, index=False, lineterminator="\n")
        return path

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_experiment(experiment))
    return path


def dump_experiment(experiment: ExperimentFile) -> str:
    """Structured YAML text of an experiment file."""
    records = []
    for record in experiment.records:
        block: dict[str, Any] = {"state_label": record.state_label}
        if record.parameter_a is not None:
            block["parameter_a"] = float(record.parameter_a)
        block["measurements"] = [
            {
                "label": measurement.label,
                "probabilities": ", ".join(_format_probability(p) for p in measurement.probabilities),
            }
            for measurement in record.measurements
        ]
        records.append(block)
    document = {
        "format_version": experiment.format_version,
        "metadata": dict(sorted(experiment.metadata.items())),
        "records": records,
    }
    return yaml.safe_dump(document, sort_keys=False, allow_unicode=True)


def load_density_matrix(path: "str | Path") -> DensityMatrix:
    """Read ``{real: [[...]], imag: [[...]]}`` YAML into a DensityMatrix."""
    path = Path(path)
    if not path.is_file():
        raise ExperimentParseError("file not found", path=str(path))
    data = _read_structured(path)
    if "real" not in data:
        raise ExperimentParseError("density matrix needs a 'real' block", path=str(path), field="real")
    try:
        real = np.asarray(data["real"], dtype=float)
        imag = np.asarray(data.get("imag", np.zeros_like(real)), dtype=float)
    except (TypeError, ValueError) as exc:
        raise ExperimentParseError(f"matrix entries must be numbers: {exc}", path=str(path)) from exc
    if real.shape != imag.shape:
        raise ExperimentParseError(
            f"real part has shape {real.shape} but imaginary part {imag.shape}",
            path=str(path),
            field="imag",
        )
    return DensityMatrix.of(entries=real + 1j * imag)


# ---------------------------------------------------------------------------
# Per-record analysis
# ---------------------------------------------------------------------------


def measurement_records(record: ExperimentRecord) -> list[MeasurementRecord]:
    """Measurement records of an experiment record, lenient on normalisation."""
    records = []
    for measurement in record.measurements:
        dist, note = ProbabilityDistribution.from_empirical(measurement.probabilities)
        records.append(MeasurementRecord(label=measurement.label, distribution=dist, note=note))
    return records


def record_vector(record: ExperimentRecord) -> EntropyVector:
    return entropy_vector(measurement_records(record), record.state_label, record.parameter_a)


def _theory_reference(
    record: ExperimentRecord,
    y: EntropyVector,
) -> Optional[EntropyVector]:
    """Per-measurement theory entropies when the record maps to a curve of matching length."""
    state = TheoryState.from_label(record.state_label)
    if state is None or record.parameter_a is None:
        return None
    reference = theory_vector(state, record.parameter_a)
    return reference if reference.n == y.n else None


def shrink_record(
    record: ExperimentRecord,
    config: ShrinkageConfig,
) -> ShrinkageResult:
    """James-Stein shrinkage of one record's entropy vector.

    FROM_REFERENCE uses the per-measurement theory vector when the record
    maps to a theory curve; without one it falls back to the sample
    variance and records that in ``sigma2_source``.
    """
    y = record_vector(record)
    reference = _theory_reference(record, y)
    if config.sigma2_mode == Sigma2Mode.FROM_REFERENCE and reference is None:
        logger.warning(
            "no theory reference, using sample variance",
            state_label=record.state_label,
            parameter_a=record.parameter_a,
        )
        config = config.model_copy(update={"sigma2_mode": Sigma2Mode.SAMPLE_VARIANCE})
    try:
        return estimator_service.james_stein(y, config, reference)
    except DegenerateInputError:
        # The zero vector shrinks to itself.
        estimator_service.check_js_dimension(y.n)
        logger.info("zero entropy vector left unshrunk", state_label=record.state_label)
        return ShrinkageResult(
            raw=y,
            factor=1.0,
            shrunk=y.scaled(1.0),
            sum_raw=0.0,
            sum_shrunk=0.0,
            sigma2_used=estimator_service.resolve_sigma2(y, config, reference),
            sigma2_source=config.sigma2_mode,
            clamped=False,
            positive_part=config.positive_part,
        )


def comparison_row(record: ExperimentRecord, config: ShrinkageConfig, theory: bool = True) -> ComparisonRow:
    """Experimental, shrunk and theoretical sums of one record."""
    result = shrink_record(record, config)
    sum_theory = delta_raw = delta_js = stretched = None
    state = TheoryState.from_label(record.state_label) if theory else None
    if state is not None and record.parameter_a is not None:
        sum_theory = theory_sum(state, record.parameter_a).bits
        delta_raw = result.sum_raw - sum_theory
        delta_js = result.sum_shrunk - sum_theory
        stretched = estimator_service.stretched_theory(sum_theory, result.factor)

    return ComparisonRow(
        state_label=record.state_label,
        parameter_a=record.parameter_a,
        sum_experimental=result.sum_raw,
        sum_js=result.sum_shrunk,
        sum_theory=sum_theory,
        delta_raw=delta_raw,
        delta_js=delta_js,
        factor=result.factor,
        sigma2_used=result.sigma2_used,
        sigma2_source=result.sigma2_source.value,
        sum_theory_stretched=stretched,
    )


def _record_error(index: int, record: ExperimentRecord, exc: EntropyAnalysisError) -> RecordError:
    return RecordError(record_index=index, state_label=record.state_label, message=exc.message)


def _row_key(row: ComparisonRow) -> tuple[str, float]:
    return row.state_label, row.parameter_a if row.parameter_a is not None else -math.inf


def run_pipeline(
    experiment: ExperimentFile,
    config: ShrinkageConfig,
    theory: bool = True,
) -> PipelineResult:
    """Entropy vector, shrinkage and theory comparison for every record.

    A failing record becomes an entry in ``errors``; the remaining records
    are still processed. Rows are sorted by (state_label, parameter_a).
    """
    rows: list[ComparisonRow] = []
    errors: list[RecordError] = []
    for index, record in enumerate(experiment.records):
        try:
            rows.append(comparison_row(record, config, theory))
        except EntropyAnalysisError as exc:
            logger.warning(
                "record skipped",
                record_index=index,
                state_label=record.state_label,
                error=exc.message,
            )
            errors.append(_record_error(index, record, exc))
    rows.sort(key=_row_key)
    return PipelineResult(rows=rows, errors=errors)


def entropy_rows(experiment: ExperimentFile, alpha: Optional[float] = None) -> list[EntropyRow]:
    """Shannon (and optionally Renyi) entropy of every measurement."""
    rows = []
    for index, record in enumerate(experiment.records):
        for measurement in measurement_records(record):
            rows.append(
                EntropyRow(
                    record_index=index,
                    state_label=record.state_label,
                    parameter_a=record.parameter_a,
                    measurement_label=measurement.label,
                    entropy=shannon_entropy(measurement.distribution).bits,
                    renyi=renyi_entropy(measurement.distribution, alpha).bits if alpha is not None else None,
                )
            )
    return rows


def shrink_rows(
    experiment: ExperimentFile,
    config: ShrinkageConfig,
) -> tuple[list[ShrinkRow], list[RecordError]]:
    """Per-measurement raw and shrunk entropies; failures collected per record."""
    rows: list[ShrinkRow] = []
    errors: list[RecordError] = []
    for index, record in enumerate(experiment.records):
        try:
            result = shrink_record(record, config)
        except EntropyAnalysisError as exc:
            errors.append(_record_error(index, record, exc))
            continue
        for measurement, raw, shrunk in zip(record.measurements, result.raw.entries, result.shrunk.entries):
            rows.append(
                ShrinkRow(
                    record_index=index,
                    state_label=record.state_label,
                    parameter_a=record.parameter_a,
                    measurement_label=measurement.label,
                    raw=raw,
                    shrunk=shrunk,
                    factor=result.factor,
                    sigma2_used=result.sigma2_used,
                    sigma2_source=result.sigma2_source.value,
                    clamped=result.clamped,
                )
            )
    return rows, errors


def bound_reports(
    experiment: ExperimentFile,
    b: Optional[float] = None,
    rho: Optional[DensityMatrix] = None,
    preset: Optional[str] = None,
    sigma2: float = 0.0,
) -> list[BoundReport]:
    """Check every record against the multi-observable bound.

    Without ``rho`` each record is assumed to come from a pure state
    (S(rho) = 0) of the measurement dimension. Without ``b`` the overlap
    constant is computed from ``preset``; ``spin1-family`` takes the
    record's parameter_a.
    """
    if b is None and preset is None:
        raise ParameterError("either an overlap constant b or a basis preset is required")
    reports = []
    for record in experiment.records:
        y = record_vector(record)
        dim = len(record.measurements[0].probabilities)
        state = rho
        if state is None:
            logger.info("no density matrix given, assuming a pure state", state_label=record.state_label)
            state = DensityMatrix.from_state(computational_state(dim, 0))
        bases = None
        if preset is not None:
            kwargs = {"a": record.parameter_a} if preset == SIMULATION_PRESET else {}
            bases = BasisPresetFactory.create(preset, **kwargs)
        reports.append(bound_service.check_relation(y, bases, state, sigma2=sigma2, b_override=b))
    return reports


# ---------------------------------------------------------------------------
# Theory curves and simulation
# ---------------------------------------------------------------------------


def default_grid(points: int = 99) -> list[float]:
    """Evenly spaced interior grid k / (points + 1), symmetric about 1/2."""
    if points < 1:
        raise ParameterError(f"grid needs at least one point, got {points}")
    return [k / (points + 1) for k in range(1, points + 1)]


def emit_curves(state: TheoryState, a_grid: Sequence[float]) -> list[CurvePoint]:
    """Theory curve of ``state`` sampled on ``a_grid``."""
    points = []
    for a in a_grid:
        if not 0.0 < a < 1.0:
            raise ParameterError(f"curve grid values must lie in (0, 1), got {a}")
        points.append(CurvePoint(a=a, sum_theory=theory_sum(state, a).bits))
    return points


def simulate_experiment(
    state: TheoryState,
    a_values: Sequence[float],
    noise: NoiseModel,
    shots: Optional[int],
    seed: int,
) -> ExperimentFile:
    """Synthetic experiment file on the spin-1 preset family.

    One record per value of a; record i samples with the i-th child of
    ``seed``.
    """
    if not a_values:
        raise ParameterError("at least one value of a is required")
    psi = spin1_state(state)
    records = []
    for a, child_seed in zip(a_values, derive_seeds(seed, len(a_values))):
        if not 0.0 < a < 1.0:
            raise ParameterError(f"parameter a must lie in (0, 1), got {a}")
        bases = BasisPresetFactory.create(SIMULATION_PRESET, a=a)
        measurements = generate_experiment(psi, bases, noise, shots=shots, seed=child_seed)
        records.append(
            ExperimentRecord(
                state_label=state.value,
                parameter_a=a,
                measurements=[
                    MeasurementEntry(label=m.label, probabilities=m.distribution.probs) for m in measurements
                ],
            )
        )
    metadata = {
        "generator": "jsentropy simulate",
        "preset": SIMULATION_PRESET,
        "noise_model": "depolarizing",
        "depolarizing_p": repr(noise.depolarizing_p),
        "shots": "exact" if shots is None else str(shots),
        "seed": str(seed),
        "state_index_zero": str(settings.STATE_INDEX_ZERO),
        "state_index_minus_one": str(settings.STATE_INDEX_MINUS_ONE),
    }
    return ExperimentFile(format_version=settings.FORMAT_VERSION, metadata=metadata, records=records)
