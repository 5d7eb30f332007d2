from app.qweyl.operators import QWeylOp, op_add, op_mul, op_scale, op_to_text, poly_in_m
from app.qweyl.tables import FunctionTable, annihilates, apply, read_table_csv, table_to_csv
from app.qweyl.builtins import BUILTINS, Builtin, builtin
from app.qweyl.guesser import guess_recurrence, required_length
from app.qweyl.certificate import HolonomyCertificate, OperatorWitness, certify, witness_shape
