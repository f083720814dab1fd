"""Module agent"""
