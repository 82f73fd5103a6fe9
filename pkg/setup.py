from setuptools import setup, find_packages

setup(
    name="protocol-ner",
    version="0.1.0",
    description="Entity recognition toolkit for wet-lab protocols with tagger ensembling",
    author="",
    packages=find_packages(exclude=("tests", "tests.*")),
    include_package_data=True,
    package_data={"protocol_ner": ["data/sample/*.txt", "data/sample/*.ann"]},
    python_requires=">=3.8",
    install_requires=[
        "Click>=8.0",
        "PyYAML>=6.0",
        "colorama>=0.4",
        "numpy>=1.20",
    ],
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={"console_scripts": ["protocol-ner=protocol_ner.cli:main"]},
)
