from .config import ConfigManager
from .monitoring import ComputationMonitor, PolyspaceLogger
