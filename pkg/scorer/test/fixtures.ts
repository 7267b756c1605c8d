/** 50 parseable, mostly drug-like molecules for range and determinism checks. */
export const CORPUS_50: string[] = [
  "CCO",
  "CC(=O)O",
  "CC(C)O",
  "CCN",
  "CCOCC",
  "CC(=O)C",
  "C=O",
  "CO",
  "NCC(=O)O",
  "CC(N)C(=O)O",
  "OCC(N)C(=O)O",
  "NC(=O)N",
  "CN(C)C=O",
  "c1ccccc1",
  "Cc1ccccc1",
  "Oc1ccccc1",
  "Nc1ccccc1",
  "COc1ccccc1",
  "c1ccncc1",
  "c1ccncn1",
  "c1c[nH]cn1",
  "c1ccoc1",
  "c1ccsc1",
  "c1ccc2ccccc2c1",
  "c1ccc2c(c1)cccn2",
  "c1ccc2c(c1)cc[nH]2",
  "C1CCCCC1",
  "OC1CCCCC1",
  "O=C1CCCCC1",
  "C1CCNCC1",
  "C1CCOCC1",
  "C1CCNC1",
  "C1CCCCCC1",
  "C1CCCCCCCCCCC1",
  "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
  "CC(=O)Oc1ccccc1C(=O)O",
  "CC(=O)Nc1ccc(O)cc1",
  "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
  "CN1CCC[C@H]1c1cccnc1",
  "NC(=O)c1ccccc1",
  "C=Cc1ccccc1",
  "ClCCl",
  "ClC(Cl)Cl",
  "FC(F)(F)c1ccccc1",
  "BrCCBr",
  "CS(=O)(=O)O",
  "NS(=O)(=O)c1ccccc1",
  "O=[N+]([O-])c1ccccc1",
  "C#Cc1ccccc1",
  "N#Cc1ccccc1",
];
