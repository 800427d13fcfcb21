from setuptools import setup, find_packages

setup(
    name="svsegre",
    version="0.1.0",
    description="Exact Stückrad-Vogel cycles, Segre classes and Segre numbers of polynomial ideals",
    packages=find_packages(exclude=["tests"]),
    package_data={"svsegre": ["templates/*.j2"]},
    python_requires=">=3.8",
    install_requires=[
        "click>=8.0.0",
        "jinja2>=3.0.0",
        "pyyaml>=5.0.0",
        "sympy>=1.12",
        "numpy>=1.21.0",
    ],
    entry_points={
        "console_scripts": [
            "svsegre=svsegre.cli:main",
        ],
    },
)
