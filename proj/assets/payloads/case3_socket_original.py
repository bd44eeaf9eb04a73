import socket


def serve():
    s = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    s.bind(("0.0.0.0", 1337))
    s.listen(5)
    while True:
        conn, addr = s.accept()
        handle(conn)
