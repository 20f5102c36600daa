"""Quiver mutation, type-A mutation classes, gentle presentations, and normal forms."""

from .quiver import (
    BadVertexLabelError,
    CanonicalForm,
    LoopArrowError,
    MutationSequence,
    Quiver,
    QuiverError,
    TwoCycleError,
)
from .type_a import (
    ClassSignature,
    ClassTooLargeError,
    MembershipReport,
    PreconditionViolatedError,
    TooLargeError,
    Violation,
    class_signature,
    count_3cycles,
    enlarge_cycle,
    enlarge_pendant,
    enlargement_plan,
    enumerate_class_bruteforce,
    enumerate_mutation_class,
    is_class_member,
    membership_report,
    open_attachment_points,
    replay_enlargements,
)
from .gentle import (
    CartanMatrix,
    GentlePresentation,
    NotInClassError,
    Path,
    SizeMismatchError,
    bareiss_det,
    cartan_det,
    cartan_matrix,
    check_gentle,
    derived_equivalent,
    path_basis,
    presentation_of,
)
from .normalform import (
    InfeasibleSignatureError,
    NotReachableError,
    SignatureMismatchError,
    StateBudgetExceededError,
    allowed_mutation_vertices,
    cycle_distance,
    normal_form_target,
    preserves_signature,
    reduce_to_normal_form,
    restricted_reachability,
    verify_sequence,
)
from .textio import (
    QuiverFormatError,
    build_sequence,
    export_dot,
    parse_quiver,
    parse_sequence_text,
    quiver_hash,
    serialize_quiver,
    serialize_sequence,
)

__all__ = [
    "BadVertexLabelError",
    "CanonicalForm",
    "CartanMatrix",
    "ClassSignature",
    "ClassTooLargeError",
    "GentlePresentation",
    "InfeasibleSignatureError",
    "LoopArrowError",
    "MembershipReport",
    "MutationSequence",
    "NotInClassError",
    "NotReachableError",
    "Path",
    "PreconditionViolatedError",
    "Quiver",
    "QuiverError",
    "QuiverFormatError",
    "SignatureMismatchError",
    "SizeMismatchError",
    "StateBudgetExceededError",
    "TooLargeError",
    "TwoCycleError",
    "Violation",
    "allowed_mutation_vertices",
    "bareiss_det",
    "build_sequence",
    "cartan_det",
    "cartan_matrix",
    "check_gentle",
    "class_signature",
    "count_3cycles",
    "cycle_distance",
    "derived_equivalent",
    "enlarge_cycle",
    "enlarge_pendant",
    "enlargement_plan",
    "enumerate_class_bruteforce",
    "enumerate_mutation_class",
    "export_dot",
    "is_class_member",
    "membership_report",
    "normal_form_target",
    "open_attachment_points",
    "parse_quiver",
    "parse_sequence_text",
    "path_basis",
    "preserves_signature",
    "presentation_of",
    "quiver_hash",
    "reduce_to_normal_form",
    "replay_enlargements",
    "restricted_reachability",
    "serialize_quiver",
    "serialize_sequence",
    "verify_sequence",
]

__version__ = "0.1.0"
