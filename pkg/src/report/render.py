import io
import json

import pandas as pd
from pydantic import BaseModel

from report.models import OutputFormat

TABLE_COLUMNS = ["system", "check-id", "kind", "label", "index", "observed", "expected", "ok"]


def render_json(model: BaseModel) -> str:
    """Canonical JSON: aliases, sorted keys, no unset optionals."""
    return json.dumps(model.model_dump(by_alias=True, exclude_none=True), sort_keys=True, indent=2) + "\n"


def render_rows(rows: list[dict], fmt: OutputFormat, columns: list[str] | None = None) -> str:
    frame = pd.DataFrame(rows, columns=columns or (list(rows[0]) if rows else TABLE_COLUMNS))
    if OutputFormat(fmt) is OutputFormat.CSV:
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator="\n")
        return buffer.getvalue()
    records = json.loads(frame.to_json(orient="records"))
    return json.dumps(records, sort_keys=True, indent=2) + "\n"
