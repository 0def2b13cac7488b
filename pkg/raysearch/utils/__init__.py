"""Utilities for reading and writing sequence data"""
