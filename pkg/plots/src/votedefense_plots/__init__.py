from .figures import (
    Aggregates,
    FigureSpec,
    RenderResult,
    SchemaError,
    aggregate,
    load_rows,
    render_figures,
)

__version__ = "0.1.0"
