"""
Shared plumbing of the management commands: file loading, atomic output and
the mapping of library errors to exit codes.
"""

from __future__ import annotations

import csv
import json
import logging
import warnings
from pathlib import Path
from typing import TYPE_CHECKING
from typing import Any

from django.core.management.base import BaseCommand
from django.core.management.base import CommandError

from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import ConvergenceWarning
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.global_data.exceptions import SolverNotConverged
from shift_denoise.global_data.files import atomic_write
from shift_denoise.global_data.files import write_json
from shift_denoise.signal_core.io import read_signal_csv
from shift_denoise.signal_core.io import write_signal_csv

if TYPE_CHECKING:
    from collections.abc import Iterable
    from collections.abc import Sequence

    from shift_denoise.signal_core.sequences import Signal

logger = logging.getLogger(__name__)

EXIT_CONFIGURATION = 2
EXIT_DATA = 3
EXIT_NOT_CONVERGED = 4


def load_json(path: str | Path, what: str = "document") -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read {what} {path}: {exc.strerror}"
        raise DataError(msg) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        msg = f"{path}, line {exc.lineno}: invalid JSON ({exc.msg})"
        raise DataError(msg) from exc


def require_file(path: str | Path, what: str) -> Path:
    path = Path(path)
    if not path.is_file():
        msg = f"{what} {path} does not exist"
        raise DataError(msg)
    return path


def require_output(path: str | Path) -> Path:
    path = Path(path)
    if not path.parent.is_dir():
        msg = f"output directory {path.parent} does not exist"
        raise DataError(msg)
    return path


def read_signal(path: str | Path) -> Signal:
    return read_signal_csv(require_file(path, "signal file"))


def write_signal(x: Signal, path: str | Path) -> None:
    with atomic_write(path) as stream:
        write_signal_csv(x, stream)


def write_rows(rows: Iterable[dict[str, Any]], columns: Sequence[str], path: str | Path) -> None:
    """CSV with a header row; ``None`` cells are left empty."""
    with atomic_write(path) as stream:
        writer = csv.DictWriter(stream, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: "" if value is None else value for key, value in row.items()})


class LibraryCommand(BaseCommand):
    """
    Base class of the shift_denoise commands.

    Subclasses implement :meth:`run`. Library errors become ``CommandError``
    with exit code 2 (configuration), 3 (data) or 4 (solver did not converge;
    the output has been written by then). Warnings raised while running are
    echoed to stderr.
    """

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                self.run(**options)
                if any(issubclass(item.category, ConvergenceWarning) for item in caught):
                    msg = "the solver did not converge; the output was written with converged=false"
                    raise SolverNotConverged(msg)
            except ConfigurationError as exc:
                raise CommandError(str(exc), returncode=EXIT_CONFIGURATION) from exc
            except DataError as exc:
                raise CommandError(str(exc), returncode=EXIT_DATA) from exc
            except OSError as exc:
                raise CommandError(f"{exc.filename}: {exc.strerror}", returncode=EXIT_DATA) from exc
            except SolverNotConverged as exc:
                raise CommandError(str(exc), returncode=EXIT_NOT_CONVERGED) from exc
            finally:
                for item in caught:
                    self.stderr.write(self.style.WARNING(f"{item.category.__name__}: {item.message}"))

    def write_json(self, data: Any, path: str | Path) -> None:
        write_json(data, path)
        self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))

    def write_signal(self, x: Signal, path: str | Path) -> None:
        write_signal(x, path)
        self.stdout.write(self.style.SUCCESS(f"Wrote {path} ({len(x)} samples from t={x.start})"))
