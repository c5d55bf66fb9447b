"""Configuration, logging, persistence and parsing helpers."""
