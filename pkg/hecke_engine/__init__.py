# Extended affine Hecke algebra engine, type D
