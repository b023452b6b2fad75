from setuptools import setup, find_packages
from nucorrelate.core.version import get_version

VERSION = get_version()

f = open('README.md', 'r')
LONG_DESCRIPTION = f.read()
f.close()

setup(
    name='nu-correlate',
    version=VERSION,
    description='Coherence and flavor entanglement of three-flavor neutrino oscillations with wave-packet decoherence.',
    long_description=LONG_DESCRIPTION,
    long_description_content_type='text/markdown',
    author='nu-correlate developers',
    url='about:none',
    license='MIT',
    python_requires='>=3.9',
    packages=find_packages(exclude=['ez_setup', 'tests*']),
    package_data={'nucorrelate': ['templates/*']},
    include_package_data=True,
    entry_points="""
        [console_scripts]
        nu-correlate = nucorrelate.main:main
    """,
)
