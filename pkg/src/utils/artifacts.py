"""CSV/JSON artifact writing for run outputs."""
import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from src.utils.logger import Logger


FLOAT_FORMAT = '.17g'


def format_number(value: Any) -> str:
    """
    Render a cell value. Floats use 17 significant digits so they read back
    bit-identical; None becomes an empty cell.
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"Refusing to write non-finite value {value}")
        return format(value, FLOAT_FORMAT)
    return str(value)


def _json_ready(value: Any) -> Any:
    if isinstance(value, complex):
        return [_json_ready(value.real), _json_ready(value.imag)]
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Refusing to write non-finite value {value}")
        return float(format(value, FLOAT_FORMAT))
    if isinstance(value, dict):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if hasattr(value, 'item') and callable(value.item):
        return _json_ready(value.item())
    return value


class ArtifactWriter:
    """
    Writes run artifacts into one output directory.

    All writes go through a single instance owned by the caller, so worker
    threads only ever return data; the file system is touched in order.
    """

    def __init__(self, out_dir: Path | str):
        self.out_dir = Path(out_dir)
        self.written: list[Path] = []

    def _path(self, name: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / name

    @staticmethod
    def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"Row has {len(row)} cells, header has {len(header)}")
            writer.writerow([format_number(cell) for cell in row])
        return buffer.getvalue()

    @staticmethod
    def render_json(payload: Any) -> str:
        return json.dumps(_json_ready(payload), indent=2, sort_keys=True, allow_nan=False) + '\n'

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self._path(name)
        path.write_text(self.render_csv(header, rows), encoding='utf-8', newline='')
        self.written.append(path)
        Logger.info(f"Wrote {path}")
        return path

    def write_json(self, name: str, payload: Any) -> Path:
        path = self._path(name)
        path.write_text(self.render_json(payload), encoding='utf-8', newline='')
        self.written.append(path)
        Logger.info(f"Wrote {path}")
        return path

    def write_text(self, name: str, text: str) -> Optional[Path]:
        path = self._path(name)
        path.write_text(text, encoding='utf-8', newline='')
        self.written.append(path)
        Logger.info(f"Wrote {path}")
        return path
