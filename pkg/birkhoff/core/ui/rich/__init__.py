from .rich_engine_ui import RichEngineUI


__all__ = ["RichEngineUI"]
