from .languages import choreo_config, default_registry, lambda_config, while_config
from .registry import (
    BisimWidget,
    CheckWidget,
    Example,
    LimitError,
    LtsWidget,
    Registry,
    StepsWidget,
    TraceWidget,
    ViewWidget,
    Widget,
    WidgetResult,
    WorkbenchConfig,
    widget_kind,
)
from .sessions import Session, SessionError, SessionStore, StaleStepError

__all__ = [
    "Registry", "WorkbenchConfig", "Example", "Widget", "widget_kind",
    "ViewWidget", "StepsWidget", "LtsWidget", "BisimWidget", "TraceWidget",
    "CheckWidget", "WidgetResult", "LimitError",
    "SessionStore", "Session", "SessionError", "StaleStepError",
    "default_registry", "while_config", "lambda_config", "choreo_config",
]
