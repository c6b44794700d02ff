"""
Setup script for nmls.
"""

from setuptools import setup, find_packages

# Read the contents of requirements.txt
with open('requirements.txt') as f:
    requirements = [
        line.strip() for line in f
        if line.strip() and not line.startswith('#')
        and not line.startswith(('pytest', 'black', 'isort', 'flake8', 'mypy'))
    ]

# Read the README for the long description
with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

setup(
    name="nmls",
    version="0.1.0",
    description="Non-monotone line searches with Metropolis-type relaxation, "
                "benchmark suite and data profiles",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["nmls"],
    include_package_data=True,
    install_requires=requirements,
    extras_require={
        "test": ["pytest>=6.2.5", "pytest-cov>=2.12.1"],
    },
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    entry_points={
        "console_scripts": [
            "nmls=nmls:main",
        ],
    },
)
