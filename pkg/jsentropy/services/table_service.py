"""Delimiter-separated tables of result rows.

Header names are the schema field names. Floats are printed with
``settings.SIGNIFICANT_DIGITS`` significant digits (17 with full precision)
and absent values as ``NA``.
"""

from typing import Optional, Sequence

import pandas as pd
from pydantic import BaseModel

from jsentropy.core.config import settings

ABSENT = "NA"


def to_frame(
    rows: Sequence[BaseModel],
    model: type[BaseModel],
    drop_empty: Sequence[str] = (),
) -> pd.DataFrame:
    """One column per schema field, one line per row.

    Columns named in ``drop_empty`` are removed when no row has a value.
    """
    columns = list(model.model_fields)
    frame = pd.DataFrame([row.model_dump(mode="json") for row in rows], columns=columns)
    for column in drop_empty:
        if column in frame.columns and frame[column].isna().all():
            frame = frame.drop(columns=column)
    return frame


def format_table(
    frame: pd.DataFrame,
    full_precision: bool = False,
    sep: str = ",",
    digits: Optional[int] = None,
) -> str:
    """Render a frame as text with a header row."""
    digits = 17 if full_precision else (digits or settings.SIGNIFICANT_DIGITS)
    return frame.to_csv(
        index=False,
        sep=sep,
        float_format=f"%.{digits}g",
        na_rep=ABSENT,
        lineterminator="\n",
    )


def render_rows(
    rows: Sequence[BaseModel],
    model: type[BaseModel],
    full_precision: bool = False,
    drop_empty: Sequence[str] = (),
) -> str:
    return format_table(to_frame(rows, model, drop_empty), full_precision=full_precision)
