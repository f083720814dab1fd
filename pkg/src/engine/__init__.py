"""Module engine"""
