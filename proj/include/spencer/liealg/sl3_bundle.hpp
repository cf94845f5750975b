#pragma once

/* Bundled structure constants for sl3: commutators of the defining
 * traceless 3x3 basis h1=E11-E22, h2=E22-E33, e_ij=E_ij (i!=j).
 * The unit test re-derives this table from the matrices and compares.
 * Identical content ships as data/algebras/sl3.json. */

namespace spencer::liealg {

inline constexpr const char* kSl3BundledJson = R"JSON(
{
  "brackets": [
    {
      "coeffs": {
        "2": "2/1"
      },
      "i": 0,
      "j": 2
    },
    {
      "coeffs": {
        "3": "-2/1"
      },
      "i": 0,
      "j": 3
    },
    {
      "coeffs": {
        "4": "1/1"
      },
      "i": 0,
      "j": 4
    },
    {
      "coeffs": {
        "5": "-1/1"
      },
      "i": 0,
      "j": 5
    },
    {
      "coeffs": {
        "6": "-1/1"
      },
      "i": 0,
      "j": 6
    },
    {
      "coeffs": {
        "7": "1/1"
      },
      "i": 0,
      "j": 7
    },
    {
      "coeffs": {
        "2": "-1/1"
      },
      "i": 1,
      "j": 2
    },
    {
      "coeffs": {
        "3": "1/1"
      },
      "i": 1,
      "j": 3
    },
    {
      "coeffs": {
        "4": "1/1"
      },
      "i": 1,
      "j": 4
    },
    {
      "coeffs": {
        "5": "-1/1"
      },
      "i": 1,
      "j": 5
    },
    {
      "coeffs": {
        "6": "2/1"
      },
      "i": 1,
      "j": 6
    },
    {
      "coeffs": {
        "7": "-2/1"
      },
      "i": 1,
      "j": 7
    },
    {
      "coeffs": {
        "0": "1/1"
      },
      "i": 2,
      "j": 3
    },
    {
      "coeffs": {
        "7": "-1/1"
      },
      "i": 2,
      "j": 5
    },
    {
      "coeffs": {
        "4": "1/1"
      },
      "i": 2,
      "j": 6
    },
    {
      "coeffs": {
        "6": "1/1"
      },
      "i": 3,
      "j": 4
    },
    {
      "coeffs": {
        "5": "-1/1"
      },
      "i": 3,
      "j": 7
    },
    {
      "coeffs": {
        "0": "1/1",
        "1": "1/1"
      },
      "i": 4,
      "j": 5
    },
    {
      "coeffs": {
        "2": "1/1"
      },
      "i": 4,
      "j": 7
    },
    {
      "coeffs": {
        "3": "-1/1"
      },
      "i": 5,
      "j": 6
    },
    {
      "coeffs": {
        "1": "1/1"
      },
      "i": 6,
      "j": 7
    }
  ],
  "dim": 8,
  "labels": [
    "h1",
    "h2",
    "e12",
    "e21",
    "e13",
    "e31",
    "e23",
    "e32"
  ]
}
)JSON";

}  // namespace spencer::liealg
