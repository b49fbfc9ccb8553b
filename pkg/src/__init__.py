"""Hierarchical legged-robot navigation sandbox: terrain, waypoints, rewards, planners and evaluation"""

__version__ = "0.1.0"
