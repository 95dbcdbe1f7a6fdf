"""Finite posets and categories, Dwyer inclusions, nerves and horn-filling certificates."""
from .anodyne import CertificateCheck, HornStep, InnerAnodyneCertificate, Unknown, certify_inner_anodyne, verify_certificate
from .dwyer import DwyerWitness, PosetPushout, adjoin_terminal, check_dwyer_witness, dwyer_witness, poset_product, pushout_along_dwyer
from .nerve import ChainComplexSSet, NervePushout, all_chains, faces_of, nerve, pushout_of_nerves
from .oneway import FinCategory, Glued, Identity, one_way_pushout
from .poset import ONE, TWO, Apex, FinPoset, PosetInclusion, PosetMap

__all__ = [
    "Apex", "CertificateCheck", "ChainComplexSSet", "DwyerWitness", "FinCategory", "FinPoset", "Glued",
    "HornStep", "Identity", "InnerAnodyneCertificate", "NervePushout", "ONE", "PosetInclusion", "PosetMap",
    "PosetPushout", "TWO", "Unknown", "adjoin_terminal", "all_chains", "certify_inner_anodyne",
    "check_dwyer_witness", "dwyer_witness", "faces_of", "nerve", "one_way_pushout", "poset_product",
    "pushout_along_dwyer", "pushout_of_nerves", "verify_certificate",
]
