import setuptools

with open("README.md", encoding='utf-8') as fh:
    long_description = fh.read()

setuptools.setup(
    name="pydqc",
    version="0.0.1",
    license='BSD 3-clause "New" or "Revised License"',
    description="This package estimates and simulates the entanglement overheads of distributed fault tolerant quantum architectures.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    entry_points={
        'console_scripts': [
            'pydqc=pydqc.utils.commandline:commandLine',
            ]
    },
    packages=setuptools.find_packages(exclude=["examples","examples.*"]),
    include_package_data=True,
    package_data={'pydqc': ['tests/inputs/*.yaml']},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.7',
    install_requires=['pytest','numpy','scipy','pyyaml','h5py'],
    extras_require={'mpi':['mpi4py']}
)
