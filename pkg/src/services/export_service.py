"""
Report assembly and export: the info summary, HH dimension tables, the
induced Delta matrix with generator annotations, and algebra files.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from src.frobenius.frobenius import is_symmetric, nakayama_order
from src.resolution import generator_catalogue, nu_conjugate_average, realize_generator
from src.services.pipeline_service import AlgebraBundle
from src.utils.errors import AveragingUndefinedError, DegreeTooLargeError, InapplicableError
from src.zoo.algebra_file import save_algebra

SKIPPED = "skipped"


def _scalar_text(value) -> str:
    return str(value)


class ExportService:
    """
    Builds report tables and writes them as text or JSON.

    Args:
        config: Toolkit configuration
        logger: Logger instance
    """

    def __init__(self, config: dict, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)

    def info_report(self, bundle: AlgebraBundle) -> Dict[str, Any]:
        """Dimension, field, Frobenius status, nu order, symmetry and gradings."""
        zoo = bundle.zoo
        algebra = zoo.algebra
        report: Dict[str, Any] = {
            'algebra': algebra.name,
            'description': bundle.description,
            'dim': algebra.dim,
            'field': algebra.field.name,
            'frobenius': zoo.frobenius is not None,
            'symmetric': None,
            'nu_order': None,
            'gradings': sorted(zoo.gradings),
            'automorphisms': sorted(zoo.automorphisms),
        }
        if zoo.frobenius is not None:
            report['symmetric'] = is_symmetric(zoo.frobenius)
            report['nu_order'] = nakayama_order(zoo.frobenius, bundle.engine.order_bound)
        if bundle.is_dnr:
            P = zoo.presentation
            report['family'] = {'n': P.n, 'r': P.r, 'period': P.period}
        return report

    def hh_table(self, bundle: AlgebraBundle, max_degree: int) -> pd.DataFrame:
        """
        One row per degree with dim HH^n and dim HH^n(A)^{nu up}.

        Degrees beyond the budget are kept with status 'skipped'.
        """
        engine = bundle.engine
        nu = bundle.zoo.nu
        rows = []
        for n in range(max_degree + 1):
            row = {'degree': n, 'hh_dim': None, 'hh_up_dim': None, 'status': 'ok'}
            try:
                row['hh_dim'] = engine.hh_dim(n)
                if nu is not None:
                    row['hh_up_dim'] = engine.hh_up(nu, n).dim
            except DegreeTooLargeError as exc:
                self.logger.info(f"HH^{n} skipped: {exc}")
                row['status'] = SKIPPED
            rows.append(row)
        table = pd.DataFrame(rows, columns=['degree', 'hh_dim', 'hh_up_dim', 'status'])
        return table.astype({'hh_dim': 'Int64', 'hh_up_dim': 'Int64'})

    def bv_table(self, bundle: AlgebraBundle, degree: int) -> pd.DataFrame:
        """
        The induced Delta on HH^degree(A)^{nu up}: rows are target classes,
        columns source classes, entries exact scalars as text.

        Raises:
            MissingFrobeniusError: the algebra has no Frobenius form
            DegreeTooLargeError: the degree exceeds the budget
        """
        matrix = bundle.engine.bv_matrix(degree)
        columns = [f"{matrix.source.label}[{j}]" for j in range(matrix.source.dim)]
        if matrix.target is None:
            return pd.DataFrame([], columns=columns)
        index = [f"{matrix.target.label}[{i}]" for i in range(matrix.target.dim)]
        data = [[_scalar_text(c) for c in row] for row in matrix.rows]
        return pd.DataFrame(data, index=index, columns=columns)

    def generator_annotations(self, bundle: AlgebraBundle, degree: int) -> List[Dict[str, Any]]:
        """
        Named generators of degree ``degree`` with their class coordinates in
        HH^degree(R)^{nu up} and the coordinates of Delta of that class.

        Only R(n,r) bundles carry names; others return an empty list.
        """
        if not bundle.is_dnr or degree == 0:
            return []
        engine = bundle.engine
        zoo = bundle.zoo
        characteristic = zoo.algebra.field.characteristic
        annotations = []
        for spec in generator_catalogue(zoo.presentation, degree, characteristic):
            if spec.degree != degree:
                continue
            entry: Dict[str, Any] = {'generator': spec.name, 'F': spec.F}
            try:
                x = nu_conjugate_average(zoo, realize_generator(bundle.psi_map, spec))
                cls = engine.class_of(x, sigma=zoo.nu)
                entry['class'] = [_scalar_text(c) for c in cls.coordinates]
                entry['delta'] = [_scalar_text(c) for c in engine.induced_bv_on_class(cls).coordinates]
            except (DegreeTooLargeError, InapplicableError, AveragingUndefinedError) as exc:
                entry['status'] = SKIPPED
                entry['reason'] = str(exc)
            annotations.append(entry)
        return annotations

    # Rendering

    @staticmethod
    def render(payload: Union[Dict[str, Any], pd.DataFrame], fmt: str = 'text', title: str = "") -> str:
        """Text (aligned tables, key: value lines) or JSON."""
        if fmt == 'json':
            if isinstance(payload, pd.DataFrame):
                payload = {'rows': json.loads(payload.to_json(orient='split'))}
            return json.dumps(payload, indent=2, ensure_ascii=False, default=str)
        lines = [title] if title else []
        if isinstance(payload, pd.DataFrame):
            lines.append(payload.to_string() if not payload.empty else "(empty)")
        else:
            width = max((len(str(k)) for k in payload), default=0)
            lines.extend(f"{k:<{width}} : {v}" for k, v in payload.items())
        return "\n".join(lines)

    def bv_payload(self, bundle: AlgebraBundle, degree: int) -> Dict[str, Any]:
        """Matrix plus annotations as one JSON-ready dict."""
        table = self.bv_table(bundle, degree)
        return {
            'algebra': bundle.description,
            'degree': degree,
            'matrix': json.loads(table.to_json(orient='split')),
            'generators': self.generator_annotations(bundle, degree),
        }

    def save_algebra(self, bundle: AlgebraBundle, path: Union[str, Path]) -> Path:
        """Write the algebra with its Frobenius form, automorphisms and gradings."""
        written = save_algebra(bundle.zoo, path)
        self.logger.info(f"Exported {bundle.description} to {written}")
        return written
