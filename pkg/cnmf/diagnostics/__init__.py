from .forms_check import FormsReport, check_forms

__all__ = ["FormsReport", "check_forms"]
