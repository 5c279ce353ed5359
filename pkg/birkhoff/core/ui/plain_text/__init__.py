from .plain_text_engine_ui import PlainTextEngineUI


__all__ = ["PlainTextEngineUI"]
