"""Install package."""
import os
from setuptools import setup, find_packages

PYPI_REQUIREMENTS = []
if os.path.exists("requirements.txt"):
    for line in open("requirements.txt"):
        if line.strip() and not line.startswith("#"):
            PYPI_REQUIREMENTS.append(line.strip())

setup(
    name="evolvingfourier",
    version="0.1.0",
    description="Fourier analysis of signals on time-varying graphs.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(".", exclude=["test", "test.*"]),
    zip_safe=False,
    install_requires=PYPI_REQUIREMENTS,
    entry_points={
        "console_scripts": ["evolvingfourier=evolvingfourier.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU Affero General Public License v3",
        "Operating System :: OS Independent",
    ],
)
