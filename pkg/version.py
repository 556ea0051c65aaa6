"""Centralized version definition for the de Bruijn code toolkit."""

APP_VERSION = "1.0"
