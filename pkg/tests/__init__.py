"""
Test package for the dof_puzzle toolkit.
This package contains all test files for the project.
"""
