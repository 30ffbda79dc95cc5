"""
Data models for multi-label learning: datasets, models, configs and reports.
"""
