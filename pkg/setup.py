import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
  name = 'funk-lab',
  version = '0.1.0',
  license='GPL-3.0',
  description = 'Injectivity analysis of paired shifted Funk transforms on the sphere',
  long_description = long_description,
  long_description_content_type="text/markdown",
  packages=setuptools.find_packages(exclude=['tests']),
  author = 'João Victor da Fonseca Pinto, Werner Freund',
  author_email = 'jodafons@lps.ufrj.br, wsfreund@lps.ufrj.br',
  url = 'https://github.com/ringer-softwares/funk-lab',
  keywords = ['python', 'funk transform', 'integral geometry', 'mobius'],
  python_requires='>=3.7',
  install_requires=[
          'numpy',
          'scipy',
      ],
  extras_require={
          'test': ['pytest', 'hypothesis'],
      },
  entry_points={
          'console_scripts': ['funk-lab=funklab.cli:main'],
      },
  classifiers=[
    'Development Status :: 4 - Beta',
    'Intended Audience :: Science/Research',
    'Topic :: Scientific/Engineering :: Mathematics',
    'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: 3.7',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
  ],
)
