"""
Escrita de CSV (doubles com 17 dígitos significativos) e de scripts gnuplot.
"""
import csv
import logging
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence

from flows.state import CSV_HEADER, Trajectory

logger = logging.getLogger(__name__)

FAMILY_HEADER = ('alpha', 'r', 't_deriv', 'A1', 'A2', 'A3', 'B', 'C', 'res1', 'res2', 'res3', 'res4', 'res5')
ERROR_PREFIX = '# error: '


def format_value(value) -> str:
    if isinstance(value, float):
        return '%.17g' % value
    return str(value)


class CsvReport:
    """CSV determinístico; um erro vira uma linha final '# error: ...'"""

    def __init__(self, stream: IO[str], header: Sequence[str]):
        self.stream = stream
        self.writer = csv.writer(stream, lineterminator='\n')
        self.writer.writerow(header)
        self.rows = 0

    def write_row(self, row: Iterable):
        self.writer.writerow([format_value(value) for value in row])
        self.rows += 1

    def write_rows(self, rows: Iterable[Iterable]):
        for row in rows:
            self.write_row(row)

    def write_error(self, message: str):
        self.stream.write(f"{ERROR_PREFIX}{message}\n")
        logger.error(f"Relatório interrompido após {self.rows} linhas: {message}")

    def flush(self):
        self.stream.flush()


def write_trajectory(stream: IO[str], trajectory: Trajectory, error: Optional[str] = None) -> CsvReport:
    report = CsvReport(stream, CSV_HEADER)
    report.write_rows(trajectory.rows())
    if error:
        report.write_error(error)
    report.flush()
    return report


def plot_script(csv_path: str, x_column: str, y_columns: Sequence[str], header: Sequence[str],
                logscale_x: bool = False) -> str:
    """Script gnuplot que lê o CSV pelas posições das colunas no cabeçalho"""
    x = header.index(x_column) + 1
    lines = [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        f"set xlabel '{x_column}'",
        "set grid",
    ]
    if logscale_x:
        lines.append("set logscale x")
    plots = [f"'{csv_path}' using {x}:{header.index(column) + 1} with lines title '{column}'" for column in y_columns]
    lines.append('plot ' + ', \\\n     '.join(plots))
    return '\n'.join(lines) + '\n'


def write_plot_script(path: str, csv_path: str, x_column: str, y_columns: Sequence[str],
                      header: Sequence[str], logscale_x: bool = False):
    Path(path).write_text(plot_script(csv_path, x_column, y_columns, header, logscale_x), encoding='utf-8')
    logger.info(f"Script gnuplot gravado em {path}")
