#pragma once

// N=12, ell=6, configuration (3,2,1): reference solution tables.

#include <array>
#include <complex>

namespace brc::testdata {

struct TableSolution {
  int number;
  bool starred;
  std::array<std::complex<double>, 6> roots;
};

inline const std::array<TableSolution, 21> kTable321{{
    {1, false, {{{0.54241927, 0.0}, {0.54455699, 0.99639165}, {0.54455699, -0.99639165}, {-0.45810568, 0.50017785}, {-0.45810568, -0.50017785}, {-0.71532188, 0.0}}}},
    {2, false, {{{0.52708058, 0.0}, {0.52957875, 0.99660493}, {0.52957875, -0.99660493}, {-0.6412783, 0.50335013}, {-0.6412783, -0.50335013}, {-0.30368149, 0.0}}}},
    {3, false, {{{0.49893578, 0.0}, {0.50200196, 0.99724969}, {0.50200196, -0.99724969}, {-0.69284388, 0.50515234}, {-0.69284388, -0.50515234}, {-0.11725196, 0.0}}}},
    {4, false, {{{0.46564665, 0.0}, {0.46941736, 0.99809739}, {0.46941736, -0.99809739}, {-0.71976299, 0.5061424}, {-0.71976299, -0.5061424}, {0.035044606, 0.0}}}},
    {5, false, {{{0.4243001, 0.0}, {0.42960641, 0.9994133}, {0.42960641, -0.9994133}, {-0.73869344, 0.50683156}, {-0.73869344, -0.50683156}, {0.19387395, 0.0}}}},
    {6, true, {{{0.38490522, 0.01906127}, {0.36730804, 0.99179719}, {0.36730804, -0.99179719}, {-0.75221326, 0.50729383}, {-0.75221326, -0.50729383}, {0.38490522, -0.01906127}}}},
    {7, false, {{{0.23056669, 0.0}, {0.23083274, 0.99967059}, {0.23083274, -0.99967059}, {-0.76056174, 0.50745313}, {-0.76056174, -0.50745313}, {0.82889133, 0.0}}}},
    {8, false, {{{0.20669577, 0.0}, {0.20597572, 1.00038608}, {0.20597572, -1.00038608}, {0.10578435, 0.5}, {0.10578435, -0.5}, {-0.8302159, 0.0}}}},
    {9, false, {{{0.059726272, 0.0}, {0.06007063, 0.99927337}, {0.06007063, -0.99927337}, {0.1084731, 0.5}, {0.1084731, -0.5}, {-0.39681373, 0.0}}}},
    {10, false, {{{0.010757119, 0.0}, {0.01249979, 0.99958901}, {0.01249979, -0.99958901}, {0.06941354, 0.5}, {0.06941354, -0.5}, {-0.17458378, 0.0}}}},
    {11, true, {{{0.0, 0.0185399}, {0.0, 0.99377501}, {0.0, -0.99377501}, {0.0, 0.5}, {0.0, -0.5}, {0.0, -0.0185399}}}},
    {12, false, {{{-0.010757119, 0.0}, {-0.01249979, 0.99958901}, {-0.01249979, -0.99958901}, {-0.06941354, 0.5}, {-0.06941354, -0.5}, {0.17458378, 0.0}}}},
    {13, false, {{{-0.059726272, 0.0}, {-0.06007063, 0.99927337}, {-0.06007063, -0.99927337}, {-0.1084731, 0.5}, {-0.1084731, -0.5}, {0.39681373, 0.0}}}},
    {14, false, {{{-0.20669577, 0.0}, {-0.20597572, 1.00038608}, {-0.20597572, -1.00038608}, {-0.10578435, 0.5}, {-0.10578435, -0.5}, {0.8302159, 0.0}}}},
    {15, false, {{{-0.23056669, 0.0}, {-0.23083274, 0.99967059}, {-0.23083274, -0.99967059}, {0.76056174, 0.50745313}, {0.76056174, -0.50745313}, {-0.82889133, 0.0}}}},
    {16, true, {{{-0.38490522, 0.01906127}, {-0.36730804, 0.99179719}, {-0.36730804, -0.99179719}, {0.75221326, 0.50729383}, {0.75221326, -0.50729383}, {-0.38490522, -0.01906127}}}},
    {17, false, {{{-0.4243001, 0.0}, {-0.42960641, 0.9994133}, {-0.42960641, -0.9994133}, {0.73869344, 0.50683156}, {0.73869344, -0.50683156}, {-0.19387395, 0.0}}}},
    {18, false, {{{-0.46564665, 0.0}, {-0.46941736, 0.99809739}, {-0.46941736, -0.99809739}, {0.71976299, 0.5061424}, {0.71976299, -0.5061424}, {-0.035044606, 0.0}}}},
    {19, false, {{{-0.49893578, 0.0}, {-0.50200196, 0.99724969}, {-0.50200196, -0.99724969}, {0.69284388, 0.50515234}, {0.69284388, -0.50515234}, {0.11725196, 0.0}}}},
    {20, false, {{{-0.52708058, 0.0}, {-0.52957875, 0.99660493}, {-0.52957875, -0.99660493}, {0.6412783, 0.50335013}, {0.6412783, -0.50335013}, {0.30368149, 0.0}}}},
    {21, false, {{{-0.54241927, 0.0}, {-0.54455699, 0.99639165}, {-0.54455699, -0.99639165}, {0.45810568, 0.50017785}, {0.45810568, -0.50017785}, {0.71532188, 0.0}}}},
}};

}  // namespace brc::testdata
