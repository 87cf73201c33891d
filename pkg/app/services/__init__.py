"""Group engine services"""
